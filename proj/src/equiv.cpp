#include "sniep/equiv.hpp"

#include "sniep/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace sniep {

Validation validate_realization(const SoulesRealization& real) {
    if (!real.spec.x_sq) return {false, "Soules spec has no exact squares"};
    if (auto v = validate_sequence(real.spec.seq); !v) return v;
    if (real.sigma.size() != real.spec.seq.n || real.diag.size() != real.spec.seq.n)
        return {false, "sizes of spectrum, diagonal and Soules spec differ"};
    auto d = soules_diag_exact(real.spec, real.sigma);
    if (d != real.diag.values())
        return {false, "diagonal (" + join(real.diag.values()) + ") differs from the exact value (" + join(d) + ")"};
    return {};
}

// ---- Soules -> H --------------------------------------------------------------------

namespace {

struct Sub {
    std::size_t n = 0;
    std::vector<SoulesSplit> splits;
    std::vector<Rational> xsq;
    std::vector<Rational> lam;  // eigenvalue of each column
};

struct ToH {
    HCertificate cert;
    std::vector<std::size_t> rows;
};

bool subset_of(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

IndexSet remap(const IndexSet& s, const std::vector<std::size_t>& where) {
    IndexSet out;
    for (auto j : s) out.push_back(where[j]);
    std::sort(out.begin(), out.end());
    return out;
}

ToH soules_to_h_rec(const Sub& s) {
    if (s.n == 1) return {HCertificate::leaf1(s.lam[0], s.lam[0]), {0}};
    if (s.n == 2) {
        auto spec = SoulesSpec::from_squares(SoulesSequence::from_splits(2, s.splits), s.xsq);
        auto sq = soules_squares_exact(spec);
        Rational d0 = sq[0][0] * s.lam[0] + sq[0][1] * s.lam[1];
        Rational d1 = sq[1][0] * s.lam[0] + sq[1][1] * s.lam[1];
        return {HCertificate::leaf2(s.lam[0], s.lam[1], d0, d1), {0, 1}};
    }
    const auto& top = s.splits[0];
    const bool star_small = top.star.size() <= s.n - 2;
    const IndexSet& gamma = star_small ? top.star : top.starstar;
    const IndexSet& delta = star_small ? top.starstar : top.star;
    const std::size_t k = gamma.size();

    Rational u2, v2;
    for (auto j : gamma) u2 += s.xsq[j];
    for (auto j : delta) v2 += s.xsq[j];
    const Rational c = v2 * s.lam[0] + u2 * s.lam[1];

    std::vector<std::size_t> where(s.n, 0);
    for (std::size_t i = 0; i < k; ++i) where[gamma[i]] = i;
    for (std::size_t i = 0; i < delta.size(); ++i) where[delta[i]] = i;

    Sub s1, s2;
    s1.n = k + 1;
    s2.n = s.n - k;
    IndexSet all1(k + 1), head1(k);
    for (std::size_t i = 0; i <= k; ++i) all1[i] = i;
    for (std::size_t i = 0; i < k; ++i) head1[i] = i;
    s1.splits.push_back({all1, head1, {k}});
    s1.lam = {s.lam[0], s.lam[1]};
    s2.lam = {c};
    for (std::size_t t = 1; t < s.splits.size(); ++t) {
        const auto& sp = s.splits[t];
        SoulesSplit m{remap(sp.parent, where), remap(sp.star, where), remap(sp.starstar, where)};
        if (subset_of(sp.parent, gamma)) {
            s1.splits.push_back(std::move(m));
            s1.lam.push_back(s.lam[t + 1]);
        } else {
            s2.splits.push_back(std::move(m));
            s2.lam.push_back(s.lam[t + 1]);
        }
    }
    for (auto j : gamma) s1.xsq.push_back(s.xsq[j]);
    s1.xsq.push_back(v2);
    for (auto j : delta) s2.xsq.push_back(s.xsq[j] / v2);

    auto r1 = soules_to_h_rec(s1);
    auto r2 = soules_to_h_rec(s2);
    std::size_t slot = static_cast<std::size_t>(std::find(r1.rows.begin(), r1.rows.end(), k) - r1.rows.begin());
    ToH out{HCertificate::node(r1.cert, r2.cert, c, slot), {}};
    for (std::size_t i = 0; i < r1.rows.size(); ++i)
        if (i != slot) out.rows.push_back(gamma[r1.rows[i]]);
    for (auto r : r2.rows) out.rows.push_back(delta[r]);
    return out;
}

}  // namespace

HCertificate soules_to_h(const SoulesRealization& real, std::vector<std::size_t>* rows) {
    if (auto v = validate_realization(real); !v) throw InputError("invalid Soules realisation: " + v.message);
    Sub s{real.spec.seq.n, real.spec.seq.splits, *real.spec.x_sq, real.sigma.values()};
    auto out = soules_to_h_rec(s);
    if (auto v = validate_certificate(out.cert); !v)
        throw std::logic_error("Soules to H produced an invalid certificate: " + v.message);
    auto d = out.cert.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != real.diag[out.rows[i]]) throw std::logic_error("Soules to H changed the diagonal");
    if (rows) *rows = out.rows;
    return out.cert;
}

// ---- H* -> Soules ----------------------------------------------------------------------

namespace {

struct ToS {
    std::vector<SoulesSplit> splits;  // rows are diagonal positions of the certificate
    std::vector<Rational> xsq;
};

// The 2x2 Soules block for (l1; l2) over (a0, a1).
ToS two_by_two(const Rational& l1, const Rational& a0, const Rational& a1) {
    const std::size_t hi = a0 >= a1 ? 0 : 1, lo = 1 - hi;
    const Rational ahi = hi == 0 ? a0 : a1, alo = hi == 0 ? a1 : a0;
    Rational eps = l1 - ahi;
    if (eps.sign() <= 0)
        throw NotIrreducible("2x2 block (" + l1.str() + ") over (" + a0.str() + "," + a1.str() +
                             ") has no slack; split the list into irreducible blocks first");
    Rational d = ahi - alo + eps + eps;
    ToS t;
    t.xsq.resize(2);
    t.xsq[hi] = (ahi - alo + eps) / d;
    t.xsq[lo] = eps / d;
    t.splits.push_back({{0, 1}, {hi}, {lo}});
    return t;
}

ToS h_to_soules_rec(const HCertificate& cert) {
    const std::size_t n = cert.size();
    if (n == 1) return {{}, {Rational(1)}};
    if (n == 2) {
        auto d = cert.diagonal();
        return two_by_two(cert.perron(), d[0], d[1]);
    }
    auto pr = peel(cert);
    auto rec = h_to_soules_rec(pr.rest);
    auto base = two_by_two(pr.c, pr.as, pr.at);

    std::size_t i_first = n, i_second = n;
    std::vector<std::size_t> inv(pr.rest.size(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = pr.place[i];
        if (p.where == Place::First)
            i_first = i;
        else if (p.where == Place::Second)
            i_second = i;
        else
            inv[p.index] = i;
    }
    ToS out;
    out.xsq.resize(n);
    for (std::size_t r = 0; r < pr.rest.size(); ++r)
        if (r != pr.slot) out.xsq[inv[r]] = rec.xsq[r];
    out.xsq[i_first] = base.xsq[0] * rec.xsq[pr.slot];
    out.xsq[i_second] = base.xsq[1] * rec.xsq[pr.slot];

    auto widen = [&](const IndexSet& s) {
        IndexSet o;
        for (auto r : s) {
            if (r == pr.slot) {
                o.push_back(i_first);
                o.push_back(i_second);
            } else {
                o.push_back(inv[r]);
            }
        }
        std::sort(o.begin(), o.end());
        return o;
    };
    for (const auto& sp : rec.splits) out.splits.push_back({widen(sp.parent), widen(sp.star), widen(sp.starstar)});
    const std::size_t lift[2] = {i_first, i_second};
    const auto& b = base.splits.front();
    out.splits.push_back({widen({pr.slot}), {lift[b.star.front()]}, {lift[b.starstar.front()]}});
    return out;
}

}  // namespace

SoulesRealization h_star_to_soules(const Spectrum& sigma, const DiagonalList& diag, const HCertificate& cert) {
    if (auto v = validate_certificate(cert); !v) throw InputError("invalid H certificate: " + v.message);
    if (cert.spectrum() != sigma) throw InputError("certificate spectrum differs from the given list");
    const std::size_t n = sigma.size();
    if (diag.size() != n) throw InputError("diagonal length differs from the spectrum");

    // certificate diagonal position -> position in diag
    auto cd = cert.diagonal();
    std::vector<std::size_t> to_user(n);
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = 0;
        while (j < n && (used[j] || diag[j] != cd[i])) ++j;
        if (j == n) throw InputError("certificate diagonal is not a rearrangement of the given diagonal");
        used[j] = true;
        to_user[i] = j;
    }

    auto t = h_to_soules_rec(cert);
    std::vector<Rational> xsq(n);
    for (std::size_t i = 0; i < n; ++i) xsq[to_user[i]] = t.xsq[i];
    std::vector<SoulesSplit> splits;
    for (const auto& sp : t.splits)
        splits.push_back({remap(sp.parent, to_user), remap(sp.star, to_user), remap(sp.starstar, to_user)});

    SoulesRealization real{SoulesSpec::from_squares(SoulesSequence::from_splits(n, splits), xsq), sigma, diag};
    if (auto v = validate_realization(real); !v)
        throw std::logic_error("H* to Soules produced a wrong realisation: " + v.message);
    return real;
}

// ---- reducible closure ----------------------------------------------------------------------

namespace {

void decompose(const Spectrum& sigma, const DiagonalList& diag, const HCertificate& cert, std::size_t budget,
               std::vector<SBarBlock>& out) {
    auto bp = find_bipartition(sigma, diag, budget);
    if (!bp) {
        out.push_back({sigma, diag, cert});
        return;
    }
    decompose(Spectrum(bp->sigma1), DiagonalList(bp->diag1), bp->cert1, budget, out);
    decompose(Spectrum(bp->sigma2), DiagonalList(bp->diag2), bp->cert2, budget, out);
}

}  // namespace

std::vector<SBarBlock> sbar_decompose(const Spectrum& sigma, const DiagonalList& diag, std::size_t budget) {
    auto o = search_with_diag(sigma, diag, budget);
    if (o.status == SearchStatus::Exhausted) throw BudgetExhausted("search budget exhausted");
    if (o.status == SearchStatus::NotMember)
        throw NotRealizable("(" + join(sigma.values()) + ") is not in H_n(" + join(diag.values()) + ")");
    std::vector<SBarBlock> out;
    decompose(sigma, diag, *o.cert, budget, out);
    return out;
}

}  // namespace sniep
