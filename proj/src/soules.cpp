#include "sniep/soules.hpp"

#include "sniep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace sniep {

Partition canonical(Partition p) {
    for (auto& s : p) std::sort(s.begin(), s.end());
    std::sort(p.begin(), p.end());
    return p;
}

namespace {

IndexSet sorted_set(IndexSet s) {
    std::sort(s.begin(), s.end());
    return s;
}

std::string show(const IndexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out + "}";
}

}  // namespace

SoulesSequence SoulesSequence::from_splits(std::size_t n, std::vector<SoulesSplit> splits) {
    if (n == 0) throw InputError("Soules sequence needs n >= 1");
    if (splits.size() + 1 != n)
        throw InputError("expected " + std::to_string(n - 1) + " splits, got " + std::to_string(splits.size()));
    SoulesSequence seq;
    seq.n = n;
    IndexSet all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    seq.partitions.push_back({all});
    for (auto& sp : splits) {
        sp.parent = sorted_set(sp.parent);
        sp.star = sorted_set(sp.star);
        sp.starstar = sorted_set(sp.starstar);
        Partition next = seq.partitions.back();
        auto it = std::find(next.begin(), next.end(), sp.parent);
        if (it == next.end()) throw InputError("split parent " + show(sp.parent) + " is not a current set");
        next.erase(it);
        next.push_back(sp.star);
        next.push_back(sp.starstar);
        seq.partitions.push_back(canonical(std::move(next)));
    }
    seq.splits = std::move(splits);
    return seq;
}

SoulesSequence SoulesSequence::from_partitions(std::vector<Partition> partitions) {
    SoulesSequence seq;
    seq.n = partitions.empty() ? 0 : partitions.size();
    for (auto& p : partitions) p = canonical(std::move(p));
    for (std::size_t i = 1; i < partitions.size(); ++i) {
        const auto& prev = partitions[i - 1];
        const auto& cur = partitions[i];
        std::vector<IndexSet> gone, fresh;
        for (const auto& s : prev)
            if (std::find(cur.begin(), cur.end(), s) == cur.end()) gone.push_back(s);
        for (const auto& s : cur)
            if (std::find(prev.begin(), prev.end(), s) == prev.end()) fresh.push_back(s);
        SoulesSplit sp;
        if (gone.size() == 1 && fresh.size() == 2) sp = {gone[0], fresh[0], fresh[1]};
        seq.splits.push_back(sp);
    }
    seq.partitions = std::move(partitions);
    return seq;
}

Validation validate_sequence(const SoulesSequence& seq) {
    auto fail = [](std::string m) { return Validation{false, std::move(m)}; };
    const std::size_t n = seq.n;
    if (n == 0) return fail("n must be at least 1");
    if (seq.partitions.size() != n) return fail("expected " + std::to_string(n) + " partitions");
    if (seq.splits.size() + 1 != n) return fail("expected " + std::to_string(n - 1) + " split records");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = seq.partitions[i];
        if (p.size() != i + 1)
            return fail("partition " + std::to_string(i + 1) + " has " + std::to_string(p.size()) + " sets");
        std::vector<int> seen(n, 0);
        for (const auto& s : p) {
            if (s.empty()) return fail("partition " + std::to_string(i + 1) + " has an empty set");
            for (std::size_t j : s) {
                if (j >= n) return fail("index out of range in partition " + std::to_string(i + 1));
                ++seen[j];
            }
        }
        for (std::size_t j = 0; j < n; ++j)
            if (seen[j] != 1) return fail("partition " + std::to_string(i + 1) + " does not cover each index once");
    }
    for (std::size_t i = 1; i < n; ++i) {
        const auto& sp = seq.splits[i - 1];
        const std::string level = "level " + std::to_string(i + 1);
        if (sp.star.empty() || sp.starstar.empty()) return fail(level + ": not a split into two nonempty sets");
        IndexSet joined = sp.star;
        joined.insert(joined.end(), sp.starstar.begin(), sp.starstar.end());
        std::sort(joined.begin(), joined.end());
        if (std::adjacent_find(joined.begin(), joined.end()) != joined.end())
            return fail(level + ": star and starstar overlap");
        if (joined != sorted_set(sp.parent)) return fail(level + ": star and starstar do not make up the parent");
        Partition expect = seq.partitions[i - 1];
        auto it = std::find(expect.begin(), expect.end(), sorted_set(sp.parent));
        if (it == expect.end()) return fail(level + ": parent " + show(sp.parent) + " is not a set of the previous level");
        expect.erase(it);
        expect.push_back(sorted_set(sp.star));
        expect.push_back(sorted_set(sp.starstar));
        if (canonical(expect) != canonical(seq.partitions[i]))
            return fail(level + ": partition is not the previous one with the parent split");
    }
    return {};
}

SoulesSpec SoulesSpec::from_squares(SoulesSequence seq, std::vector<Rational> x_sq) {
    if (x_sq.size() != seq.n) throw InputError("x has the wrong length");
    if (sum(x_sq) != Rational(1)) throw InputError("squared entries of x must sum to 1, got " + sum(x_sq).str());
    std::vector<double> x;
    for (const auto& q : x_sq) {
        if (q.sign() <= 0) throw InputError("x must be strictly positive");
        x.push_back(std::sqrt(q.to_double()));
    }
    return {std::move(seq), std::move(x), std::move(x_sq)};
}

SoulesSpec SoulesSpec::from_vector(SoulesSequence seq, std::vector<double> x) {
    if (x.size() != seq.n) throw InputError("x has the wrong length");
    double nn = 0.0;
    for (double v : x) {
        if (!(v > 0)) throw InputError("x must be strictly positive");
        nn += v * v;
    }
    if (std::fabs(nn - 1.0) > 1e-12) throw InputError("x must be a unit vector");
    return {std::move(seq), std::move(x), std::nullopt};
}

OrthMatrix build_soules_matrix(const SoulesSpec& spec) {
    if (auto v = validate_sequence(spec.seq); !v) throw InputError("invalid Soules sequence: " + v.message);
    const std::size_t n = spec.seq.n;
    const auto& x = spec.x;
    OrthMatrix r(n);
    for (std::size_t j = 0; j < n; ++j) r(j, 0) = x[j];
    for (std::size_t i = 1; i < n; ++i) {
        const auto& sp = spec.seq.splits[i - 1];
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t j : sp.star) s1 += x[j] * x[j];
        for (std::size_t j : sp.starstar) s2 += x[j] * x[j];
        if (s1 <= 0.0 || s2 <= 0.0) throw InputError("zero-norm restriction of x");
        double n1 = std::sqrt(s1), n2 = std::sqrt(s2), scale = 1.0 / std::sqrt(s1 + s2);
        for (std::size_t j : sp.star) r(j, i) = scale * (n2 / n1) * x[j];
        for (std::size_t j : sp.starstar) r(j, i) = -scale * (n1 / n2) * x[j];
    }
    return r;
}

SoulesRealized soules_realize(const SoulesSpec& spec, const std::vector<double>& lambda) {
    if (lambda.size() != spec.seq.n) throw InputError("spectrum length does not match the Soules order");
    for (std::size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i] > lambda[i - 1]) throw InputError("spectrum must be sorted non-increasing");
    auto r = build_soules_matrix(spec);
    SoulesRealized out{reconstruct(r, lambda), {}};
    out.diag = out.a.diag();
    double scale = std::max(1.0, out.a.max_abs());
    for (std::size_t i = 0; i < out.a.order(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (out.a(i, j) < -1e-8 * scale)
                throw std::logic_error("Soules realisation has a negative off-diagonal entry");
    return out;
}

SoulesRealized soules_realize(const SoulesSpec& spec, const Spectrum& sigma) {
    return soules_realize(spec, sigma.to_double());
}

std::vector<std::vector<Rational>> soules_squares_exact(const SoulesSpec& spec) {
    if (!spec.x_sq) throw InputError("exact diagonal needs rational squares of x");
    if (auto v = validate_sequence(spec.seq); !v) throw InputError("invalid Soules sequence: " + v.message);
    const auto& xs = *spec.x_sq;
    if (sum(xs) != Rational(1)) throw InputError("squared entries of x must sum to 1");
    const std::size_t n = spec.seq.n;
    std::vector<std::vector<Rational>> sq(n, std::vector<Rational>(n));
    for (std::size_t j = 0; j < n; ++j) sq[j][0] = xs[j];
    for (std::size_t i = 1; i < n; ++i) {
        const auto& sp = spec.seq.splits[i - 1];
        Rational s1, s2;
        for (std::size_t j : sp.star) s1 += xs[j];
        for (std::size_t j : sp.starstar) s2 += xs[j];
        Rational f1 = s2 / (s1 * (s1 + s2)), f2 = s1 / (s2 * (s1 + s2));
        for (std::size_t j : sp.star) sq[j][i] = xs[j] * f1;
        for (std::size_t j : sp.starstar) sq[j][i] = xs[j] * f2;
    }
    return sq;
}

std::vector<Rational> soules_diag_exact(const SoulesSpec& spec, const Spectrum& sigma) {
    if (sigma.size() != spec.seq.n) throw InputError("spectrum length does not match the Soules order");
    auto sq = soules_squares_exact(spec);
    std::vector<Rational> d(spec.seq.n);
    for (std::size_t j = 0; j < spec.seq.n; ++j)
        for (std::size_t i = 0; i < spec.seq.n; ++i) d[j] += sq[j][i] * sigma[i];
    return d;
}

}  // namespace sniep
