#include "sniep/hcalc.hpp"

#include "sniep/errors.hpp"
#include "sniep/fiedler.hpp"
#include "sniep/glue.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sniep {

// ---- certificate value type ----------------------------------------------------

struct HCertificate::Data {
    Kind kind = Kind::Leaf1;
    Rational l1, l2, a1, a2;  // leaves
    HCertificate top, bottom;  // node
    Rational c;
    std::size_t slot = 0;
    std::size_t n = 1;
};

HCertificate HCertificate::leaf1(const Rational& lambda, const Rational& a) {
    auto d = std::make_shared<Data>();
    d->kind = Kind::Leaf1;
    d->l1 = lambda;
    d->a1 = a;
    d->n = 1;
    HCertificate h;
    h.d_ = std::move(d);
    return h;
}

HCertificate HCertificate::leaf2(const Rational& l1, const Rational& l2, const Rational& a1, const Rational& a2) {
    auto d = std::make_shared<Data>();
    d->kind = Kind::Leaf2;
    d->l1 = l1;
    d->l2 = l2;
    d->a1 = a1;
    d->a2 = a2;
    d->n = 2;
    HCertificate h;
    h.d_ = std::move(d);
    return h;
}

HCertificate HCertificate::node(const HCertificate& top, const HCertificate& bottom, const Rational& c,
                                std::size_t slot) {
    if (top.empty() || bottom.empty()) throw InputError("node needs two parts");
    if (slot >= top.size()) throw InputError("node slot out of range");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Node;
    d->top = top;
    d->bottom = bottom;
    d->c = c;
    d->slot = slot;
    d->n = top.size() + bottom.size() - 1;
    HCertificate h;
    h.d_ = std::move(d);
    return h;
}

HCertificate::Kind HCertificate::kind() const { return d_->kind; }
std::size_t HCertificate::size() const { return d_->n; }

const Rational& HCertificate::perron() const {
    const HCertificate* h = this;
    while (h->kind() == Kind::Node) h = &h->d_->top;
    return h->d_->l1;
}

std::vector<Rational> HCertificate::eigenvalues() const {
    switch (kind()) {
        case Kind::Leaf1: return {d_->l1};
        case Kind::Leaf2: return {d_->l1, d_->l2};
        case Kind::Node: {
            auto e = d_->top.eigenvalues();
            auto b = d_->bottom.eigenvalues();
            e.insert(e.end(), b.begin() + 1, b.end());
            return e;
        }
    }
    return {};
}

std::vector<Rational> HCertificate::diagonal() const {
    switch (kind()) {
        case Kind::Leaf1: return {d_->a1};
        case Kind::Leaf2: return {d_->a1, d_->a2};
        case Kind::Node: {
            auto t = d_->top.diagonal();
            t.erase(t.begin() + static_cast<long>(d_->slot));
            auto b = d_->bottom.diagonal();
            t.insert(t.end(), b.begin(), b.end());
            return t;
        }
    }
    return {};
}

const Rational& HCertificate::lambda(std::size_t i) const {
    if (kind() == Kind::Node) throw std::logic_error("lambda() on a node");
    return i == 0 ? d_->l1 : d_->l2;
}

const Rational& HCertificate::a(std::size_t i) const {
    if (kind() == Kind::Node) throw std::logic_error("a() on a node");
    return i == 0 ? d_->a1 : d_->a2;
}

const HCertificate& HCertificate::top() const {
    if (kind() != Kind::Node) throw std::logic_error("top() on a leaf");
    return d_->top;
}

const HCertificate& HCertificate::bottom() const {
    if (kind() != Kind::Node) throw std::logic_error("bottom() on a leaf");
    return d_->bottom;
}

const Rational& HCertificate::c() const {
    if (kind() != Kind::Node) throw std::logic_error("c() on a leaf");
    return d_->c;
}

std::size_t HCertificate::slot() const {
    if (kind() != Kind::Node) throw std::logic_error("slot() on a leaf");
    return d_->slot;
}

Validation validate_certificate(const HCertificate& cert) {
    if (cert.empty()) return {false, "empty certificate"};
    switch (cert.kind()) {
        case HCertificate::Kind::Leaf1:
            if (cert.a(0).sign() < 0) return {false, "leaf1 with negative diagonal " + cert.a(0).str()};
            if (cert.lambda(0) != cert.a(0))
                return {false, "leaf1 needs lambda = a, got " + cert.lambda(0).str() + " and " + cert.a(0).str()};
            return {};
        case HCertificate::Kind::Leaf2: {
            std::string why;
            if (!check_n2(cert.lambda(0), cert.lambda(1), cert.a(0), cert.a(1), &why))
                return {false, "leaf2 (" + cert.lambda(0).str() + ";" + cert.lambda(1).str() + ") over (" +
                                   cert.a(0).str() + "," + cert.a(1).str() + "): " + why};
            return {};
        }
        case HCertificate::Kind::Node: {
            if (auto v = validate_certificate(cert.top()); !v) return v;
            if (auto v = validate_certificate(cert.bottom()); !v) return v;
            auto td = cert.top().diagonal();
            if (td[cert.slot()] != cert.c())
                return {false, "node: top diagonal at slot is " + td[cert.slot()].str() + ", expected c = " +
                                   cert.c().str()};
            if (cert.bottom().perron() != cert.c())
                return {false, "node: bottom Perron value " + cert.bottom().perron().str() + " differs from c = " +
                                   cert.c().str()};
            return {};
        }
    }
    return {false, "unknown node kind"};
}

std::string describe(const HCertificate& cert) {
    std::ostringstream os;
    os << "(" << join(cert.eigenvalues()) << ") over (" << join(cert.diagonal()) << ")";
    return os.str();
}

// ---- index helpers ----------------------------------------------------------------

namespace {

using Kind = HCertificate::Kind;

// top diagonal index (not the slot) -> node diagonal index
std::size_t from_top(const HCertificate& node, std::size_t j) { return j < node.slot() ? j : j - 1; }
std::size_t from_bottom(const HCertificate& node, std::size_t j) { return node.top().size() - 1 + j; }

struct Side {
    bool in_top;
    std::size_t index;
};

// node diagonal index -> part and index there
Side diag_side(const HCertificate& node, std::size_t i) {
    std::size_t tn = node.top().size();
    if (i < tn - 1) return {true, i < node.slot() ? i : i + 1};
    return {false, i - (tn - 1)};
}

// node eigenvalue index -> part and index there
Side eig_side(const HCertificate& node, std::size_t t) {
    std::size_t tn = node.top().size();
    if (t < tn) return {true, t};
    return {false, t - tn + 1};
}

void require_nonneg(const Rational& eps) {
    if (eps.sign() < 0) throw InputError("epsilon must be nonnegative, got " + eps.str());
}

std::size_t adj(std::size_t r, std::size_t removed) { return r < removed ? r : r - 1; }

}  // namespace

// ---- transformers -------------------------------------------------------------------

HCertificate perron_increase(const HCertificate& cert, const Rational& eps, std::size_t diag_index) {
    require_nonneg(eps);
    if (diag_index >= cert.size()) throw InputError("diagonal index out of range");
    if (eps.is_zero()) return cert;
    switch (cert.kind()) {
        case Kind::Leaf1: return HCertificate::leaf1(cert.lambda(0) + eps, cert.a(0) + eps);
        case Kind::Leaf2:
            return HCertificate::leaf2(cert.lambda(0) + eps, cert.lambda(1),
                                       diag_index == 0 ? cert.a(0) + eps : cert.a(0),
                                       diag_index == 1 ? cert.a(1) + eps : cert.a(1));
        case Kind::Node: {
            auto side = diag_side(cert, diag_index);
            if (side.in_top)
                return HCertificate::node(perron_increase(cert.top(), eps, side.index), cert.bottom(), cert.c(),
                                          cert.slot());
            return HCertificate::node(perron_increase(cert.top(), eps, cert.slot()),
                                      perron_increase(cert.bottom(), eps, side.index), cert.c() + eps, cert.slot());
        }
    }
    throw std::logic_error("unreachable");
}

HCertificate guo_minus(const HCertificate& cert, std::size_t target, const Rational& eps) {
    require_nonneg(eps);
    if (target == 0 || target >= cert.size()) throw InputError("Guo target must be a non-Perron eigenvalue index");
    switch (cert.kind()) {
        case Kind::Leaf1: throw std::logic_error("unreachable");
        case Kind::Leaf2:
            return HCertificate::leaf2(cert.lambda(0) + eps, cert.lambda(1) - eps, cert.a(0), cert.a(1));
        case Kind::Node: {
            auto side = eig_side(cert, target);
            if (side.in_top)
                return HCertificate::node(guo_minus(cert.top(), side.index, eps), cert.bottom(), cert.c(), cert.slot());
            return HCertificate::node(perron_increase(cert.top(), eps, cert.slot()),
                                      guo_minus(cert.bottom(), side.index, eps), cert.c() + eps, cert.slot());
        }
    }
    throw std::logic_error("unreachable");
}

GuoPlusResult guo_plus(const HCertificate& cert, std::size_t target, const Rational& eps) {
    require_nonneg(eps);
    if (target == 0 || target >= cert.size()) throw InputError("Guo target must be a non-Perron eigenvalue index");
    switch (cert.kind()) {
        case Kind::Leaf1: throw std::logic_error("unreachable");
        case Kind::Leaf2:
            return {HCertificate::leaf2(cert.lambda(0) + eps, cert.lambda(1) + eps, cert.a(0) + eps, cert.a(1) + eps),
                    0, 1};
        case Kind::Node: {
            auto side = eig_side(cert, target);
            GuoPlusResult out;
            if (side.in_top) {
                auto sub = guo_plus(cert.top(), side.index, eps);
                if (sub.s != cert.slot() && sub.t != cert.slot()) {
                    out.cert = HCertificate::node(sub.cert, cert.bottom(), cert.c(), cert.slot());
                    out.s = from_top(cert, sub.s);
                    out.t = from_top(cert, sub.t);
                } else {
                    std::size_t other = sub.s == cert.slot() ? sub.t : sub.s;
                    out.cert = HCertificate::node(sub.cert, perron_increase(cert.bottom(), eps, 0), cert.c() + eps,
                                                  cert.slot());
                    out.s = from_top(cert, other);
                    out.t = from_bottom(cert, 0);
                }
            } else {
                auto sub = guo_plus(cert.bottom(), side.index, eps);
                out.cert = HCertificate::node(perron_increase(cert.top(), eps, cert.slot()), sub.cert, cert.c() + eps,
                                              cert.slot());
                out.s = from_bottom(cert, sub.s);
                out.t = from_bottom(cert, sub.t);
            }
            if (out.s > out.t) std::swap(out.s, out.t);
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

StripResult strip_zero(const HCertificate& cert, std::size_t target) {
    if (target == 0 || target >= cert.size()) throw InputError("zero must be a non-Perron eigenvalue");
    if (!cert.eigenvalues()[target].is_zero()) throw InputError("eigenvalue at the given index is not zero");
    switch (cert.kind()) {
        case Kind::Leaf1: throw std::logic_error("unreachable");
        case Kind::Leaf2: return {HCertificate::leaf1(cert.lambda(0), cert.a(0) + cert.a(1)), 0, 1};
        case Kind::Node: {
            auto side = eig_side(cert, target);
            if (!side.in_top) {
                auto sub = strip_zero(cert.bottom(), side.index);
                return {HCertificate::node(cert.top(), sub.cert, cert.c(), cert.slot()), from_bottom(cert, sub.keep),
                        from_bottom(cert, sub.drop)};
            }
            auto sub = strip_zero(cert.top(), side.index);
            if (sub.keep != cert.slot() && sub.drop != cert.slot()) {
                std::size_t slot = adj(cert.slot(), sub.drop);
                return {HCertificate::node(sub.cert, cert.bottom(), cert.c(), slot), from_top(cert, sub.keep),
                        from_top(cert, sub.drop)};
            }
            // The glue slot was merged with another top entry a_r: the merged
            // value c + a_r becomes the new glue value, so the bottom part's
            // Perron value rises by a_r as well.
            std::size_t other = sub.keep == cert.slot() ? sub.drop : sub.keep;
            Rational ar = cert.top().diagonal()[other];
            std::size_t slot = adj(sub.keep, sub.drop);
            return {HCertificate::node(sub.cert, perron_increase(cert.bottom(), ar, 0), cert.c() + ar, slot),
                    from_bottom(cert, 0), from_top(cert, other)};
        }
    }
    throw std::logic_error("unreachable");
}

StripResult strip_zero(const HCertificate& cert) {
    auto e = cert.eigenvalues();
    for (std::size_t t = e.size(); t-- > 1;)
        if (e[t].is_zero()) return strip_zero(cert, t);
    throw InputError("no zero among the non-Perron eigenvalues");
}

HCertificate hunion(const HCertificate& c1, const HCertificate& c2) {
    const Rational& l1 = c1.perron();
    const Rational& m1 = c2.perron();
    if (l1 < m1) throw InputError("union needs Perron(c1) >= Perron(c2), got " + l1.str() + " < " + m1.str());
    auto inner = HCertificate::node(HCertificate::leaf2(l1, m1, m1, l1), c1, l1, 1);
    return HCertificate::node(inner, c2, m1, 0);
}

// ---- simplification -------------------------------------------------------------------

Simplified simplify(const HCertificate& cert) {
    const std::size_t n = cert.size();
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), 0);
    if (cert.kind() != Kind::Node) return {cert, id};

    auto st = simplify(cert.top());
    auto sb = simplify(cert.bottom());
    std::size_t slot = st.perm[cert.slot()];
    const std::size_t tn = cert.top().size();

    // perm from the node's diagonal to the diagonal of node(st, sb, c, slot)
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto side = diag_side(cert, i);
        perm[i] = side.in_top ? adj(st.perm[side.index], slot) : tn - 1 + sb.perm[side.index];
    }

    if (sb.cert.size() == 1) {
        // bottom is (c) over (c): the slot itself carries it
        std::vector<std::size_t> p2(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = perm[i];
            p2[i] = j < tn - 1 ? (j < slot ? j : j + 1) : slot;
        }
        return {st.cert, p2};
    }
    if (st.cert.size() == 1) return {sb.cert, perm};  // top is (c) over (c)
    return {HCertificate::node(st.cert, sb.cert, cert.c(), slot), perm};
}

// ---- peel form ---------------------------------------------------------------------------

HCertificate PeelResult::assemble() const {
    return HCertificate::node(rest, HCertificate::leaf2(c, lambda, as, at), c, slot);
}

namespace {

std::vector<Place> compose(const std::vector<std::size_t>& perm, const std::vector<Place>& inner) {
    std::vector<Place> out(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[i] = inner[perm[i]];
    return out;
}

PeelResult peel_simple(const HCertificate& cert);

PeelResult peel_n3(const HCertificate& cert) {
    auto e = sorted_desc(cert.eigenvalues());
    auto d = cert.diagonal();
    std::vector<std::size_t> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] > d[y]; });
    Rational c = e[0] + e[1] - d[order[0]];
    PeelResult r;
    r.rest = HCertificate::leaf2(e[0], e[1], d[order[0]], c);
    r.slot = 1;
    r.c = c;
    r.lambda = e[2];
    r.as = d[order[1]];
    r.at = d[order[2]];
    r.place.resize(3);
    r.place[order[0]] = {Place::Rest, 0};
    r.place[order[1]] = {Place::First, 0};
    r.place[order[2]] = {Place::Second, 0};
    return r;
}

// Case 3: the minimal eigenvalue lies in a top part with at least 3 entries.
PeelResult peel_case_top(const HCertificate& cert) {
    const auto& top = cert.top();
    const auto& bottom = cert.bottom();
    const std::size_t n = cert.size(), tn = top.size();
    PeelResult pt = peel_simple(top);
    Place where = pt.place[cert.slot()];

    if (where.where == Place::Rest) {
        std::size_t k = where.index;
        PeelResult r;
        r.rest = HCertificate::node(pt.rest, bottom, cert.c(), k);
        r.slot = adj(pt.slot, k);
        r.c = pt.c;
        r.lambda = pt.lambda;
        r.as = pt.as;
        r.at = pt.at;
        r.place.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto side = diag_side(cert, i);
            if (side.in_top) {
                Place p = pt.place[side.index];
                if (p.where == Place::Rest) p.index = adj(p.index, k);
                r.place[i] = p;
            } else {
                r.place[i] = {Place::Rest, pt.rest.size() - 1 + side.index};
            }
        }
        return r;
    }

    // The glue value was peeled together with a_h: regroup as
    // node(pt.rest, node(leaf2(c'; lambda | a_h, c), bottom)) and peel again.
    const bool c_first = where.where == Place::First;
    Rational ah = c_first ? pt.at : pt.as;
    auto bprime = HCertificate::node(HCertificate::leaf2(pt.c, pt.lambda, ah, cert.c()), bottom, cert.c(), 1);
    auto w = HCertificate::node(pt.rest, bprime, pt.c, pt.slot);
    const std::size_t rn = pt.rest.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto side = diag_side(cert, i);
        if (side.in_top) {
            Place p = pt.place[side.index];
            perm[i] = p.where == Place::Rest ? adj(p.index, pt.slot) : rn - 1;
        } else {
            perm[i] = rn - 1 + 1 + side.index;
        }
    }
    (void)tn;
    auto inner = peel_simple(w);
    inner.place = compose(perm, inner.place);
    return inner;
}

// Case 4: the minimal eigenvalue sits in a two-element top part.
PeelResult peel_case_top2(const HCertificate& cert) {
    const auto& top = cert.top();
    const auto& bottom = cert.bottom();
    const std::size_t n = cert.size();
    const Rational& ah = top.a(1 - cert.slot());
    PeelResult pb = peel_simple(bottom);
    auto x = HCertificate::node(HCertificate::leaf2(top.lambda(0), top.lambda(1), ah, cert.c()), pb.rest, cert.c(), 1);
    const std::size_t xslot = 1 + pb.slot;
    auto w = HCertificate::node(x, HCertificate::leaf2(pb.c, pb.lambda, pb.as, pb.at), pb.c, xslot);
    const std::size_t xn = x.size();
    std::vector<std::size_t> perm(n);
    perm[0] = adj(0, xslot);
    for (std::size_t i = 1; i < n; ++i) {
        Place p = pb.place[i - 1];
        if (p.where == Place::Rest)
            perm[i] = adj(1 + p.index, xslot);
        else
            perm[i] = xn - 1 + (p.where == Place::First ? 0 : 1);
    }
    auto inner = peel_simple(w);
    inner.place = compose(perm, inner.place);
    return inner;
}

// Peel on a certificate without degenerate nodes.
PeelResult peel_simple(const HCertificate& cert) {
    const std::size_t n = cert.size();
    if (n == 1) throw InputError("cannot peel a one-element certificate");
    if (n == 2) {
        PeelResult r;
        auto e = cert.eigenvalues();
        auto d = cert.diagonal();
        r.rest = HCertificate::leaf1(e[0], e[0]);
        r.slot = 0;
        r.c = e[0];
        r.lambda = e[1];
        r.as = d[0];
        r.at = d[1];
        r.place = {{Place::First, 0}, {Place::Second, 0}};
        return r;
    }
    if (n == 3) return peel_n3(cert);

    auto e = cert.eigenvalues();
    std::size_t t = 1;
    for (std::size_t i = 1; i < n; ++i)
        if (e[i] <= e[t]) t = i;
    const auto& top = cert.top();
    const auto& bottom = cert.bottom();
    const std::size_t tn = top.size();
    auto side = eig_side(cert, t);

    if (!side.in_top) {
        if (bottom.size() == 2) {
            PeelResult r;
            r.rest = top;
            r.slot = cert.slot();
            r.c = cert.c();
            r.lambda = bottom.lambda(1);
            r.as = bottom.a(0);
            r.at = bottom.a(1);
            r.place.resize(n);
            for (std::size_t i = 0; i + 1 < tn; ++i) r.place[i] = {Place::Rest, i < cert.slot() ? i : i + 1};
            r.place[tn - 1] = {Place::First, 0};
            r.place[tn] = {Place::Second, 0};
            return r;
        }
        PeelResult pb = peel_simple(bottom);
        PeelResult r;
        r.rest = HCertificate::node(top, pb.rest, cert.c(), cert.slot());
        r.slot = tn - 1 + pb.slot;
        r.c = pb.c;
        r.lambda = pb.lambda;
        r.as = pb.as;
        r.at = pb.at;
        r.place.resize(n);
        for (std::size_t i = 0; i + 1 < tn; ++i) r.place[i] = {Place::Rest, i};
        for (std::size_t j = 0; j < bottom.size(); ++j) {
            Place p = pb.place[j];
            if (p.where == Place::Rest) p.index += tn - 1;
            r.place[tn - 1 + j] = p;
        }
        return r;
    }
    if (tn >= 3) return peel_case_top(cert);
    return peel_case_top2(cert);
}

}  // namespace

PeelResult peel(const HCertificate& cert) {
    auto s = simplify(cert);
    auto r = peel_simple(s.cert);
    r.place = compose(s.perm, r.place);
    return r;
}

// ---- anti-Guo split ------------------------------------------------------------------------

namespace {

AntiGuoResult anti_guo_simple(const HCertificate& cert) {
    const std::size_t n = cert.size();
    if (n == 1) throw InputError("anti-Guo split needs at least two eigenvalues");
    if (n == 2) {
        AntiGuoResult r;
        auto e = cert.eigenvalues();
        auto d = cert.diagonal();
        std::size_t hi = d[0] >= d[1] ? 0 : 1, lo = 1 - hi;
        r.eps = e[0] - d[hi];
        r.left = HCertificate::leaf1(d[hi], d[hi]);
        r.right = HCertificate::leaf1(d[lo], d[lo]);
        r.place.resize(2);
        r.place[hi] = {Place::Left, 0};
        r.place[lo] = {Place::Right, 0};
        return r;
    }
    PeelResult pf = peel_simple(cert);
    auto sub = anti_guo_simple(simplify(pf.rest).cert);
    // pf.rest is already free of degenerate nodes, so its simplification is the identity.
    Place where = sub.place[pf.slot];
    HCertificate& host = where.where == Place::Left ? sub.left : sub.right;
    const std::size_t hn = host.size();
    host = HCertificate::node(host, HCertificate::leaf2(pf.c, pf.lambda, pf.as, pf.at), pf.c, where.index);

    AntiGuoResult r{sub.eps, sub.left, sub.right, std::vector<Place>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        Place p = pf.place[i];
        if (p.where == Place::Rest) {
            Place q = sub.place[p.index];
            if (q.where == where.where) q.index = adj(q.index, where.index);
            r.place[i] = q;
        } else {
            r.place[i] = {where.where, hn - 1 + (p.where == Place::First ? 0 : 1)};
        }
    }
    return r;
}

}  // namespace

AntiGuoResult anti_guo_split(const HCertificate& cert) {
    auto s = simplify(cert);
    auto r = anti_guo_simple(s.cert);
    r.place = compose(s.perm, r.place);
    return r;
}

// ---- search -----------------------------------------------------------------------------------

namespace {

struct BudgetExceeded {};

class Searcher {
public:
    Searcher(std::vector<Rational> lam, std::size_t budget) : lam_(std::move(lam)), budget_(budget) {
        prefix_.resize(lam_.size() + 1);
        for (std::size_t i = 0; i < lam_.size(); ++i) prefix_[i + 1] = prefix_[i] + lam_[i];
    }

    std::optional<HCertificate> solve(std::size_t m, const std::vector<Rational>& d) {
        if (++expansions_ > budget_) throw BudgetExceeded{};
        auto key = std::make_pair(m, d);
        if (failed_.count(key)) return std::nullopt;
        auto res = expand(m, d);
        if (!res) failed_.insert(std::move(key));
        return res;
    }

    std::size_t expansions() const { return expansions_; }

private:
    std::optional<HCertificate> expand(std::size_t m, const std::vector<Rational>& d) {
        if (prefix_[m] != sum(d)) return std::nullopt;
        if (m == 1) {
            if (lam_[0] == d[0]) return HCertificate::leaf1(lam_[0], d[0]);
            return std::nullopt;
        }
        if (m == 2) {
            if (check_n2(lam_[0], lam_[1], d[0], d[1])) return HCertificate::leaf2(lam_[0], lam_[1], d[0], d[1]);
            return std::nullopt;
        }
        std::vector<Rational> head(lam_.begin(), lam_.begin() + static_cast<long>(m));
        if (!necessary_sorted(head, d)) return std::nullopt;

        const Rational& ln = lam_[m - 1];
        // distinct values ascending, with multiplicities
        std::vector<std::pair<Rational, int>> vals;
        for (auto it = d.rbegin(); it != d.rend(); ++it) {
            if (!vals.empty() && vals.back().first == *it)
                ++vals.back().second;
            else
                vals.push_back({*it, 1});
        }
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (vals[i].first < ln) continue;
            for (std::size_t j = i; j < vals.size(); ++j) {
                if (j == i && vals[i].second < 2) continue;
                const Rational& x = vals[i].first;
                const Rational& y = vals[j].first;
                Rational c = x + y - ln;
                std::vector<Rational> next;
                next.reserve(m - 1);
                bool drop_x = false, drop_y = false;
                for (const auto& v : d) {
                    if (!drop_x && v == x) {
                        drop_x = true;
                        continue;
                    }
                    if (!drop_y && v == y) {
                        drop_y = true;
                        continue;
                    }
                    next.push_back(v);
                }
                next.insert(std::upper_bound(next.begin(), next.end(), c, std::greater<>()), c);
                auto sub = solve(m - 1, next);
                if (!sub) continue;
                auto sd = sub->diagonal();
                std::size_t slot = static_cast<std::size_t>(std::find(sd.begin(), sd.end(), c) - sd.begin());
                return HCertificate::node(*sub, HCertificate::leaf2(c, ln, x, y), c, slot);
            }
        }
        return std::nullopt;
    }

    std::vector<Rational> lam_;
    std::vector<Rational> prefix_;
    std::size_t budget_;
    std::size_t expansions_ = 0;
    std::set<std::pair<std::size_t, std::vector<Rational>>> failed_;
};

}  // namespace

SearchOutcome search_with_diag(const Spectrum& sigma, const DiagonalList& diag, std::size_t budget) {
    if (sigma.size() != diag.size())
        throw InputError("spectrum has " + std::to_string(sigma.size()) + " entries but diagonal has " +
                         std::to_string(diag.size()));
    Searcher s(sigma.values(), budget);
    SearchOutcome out;
    try {
        auto cert = s.solve(sigma.size(), diag.sorted_desc());
        out.status = cert ? SearchStatus::Found : SearchStatus::NotMember;
        out.cert = std::move(cert);
    } catch (const BudgetExceeded&) {
        out.status = SearchStatus::Exhausted;
    }
    out.expansions = s.expansions();
    return out;
}

// ---- irreducibility ------------------------------------------------------------------------------

namespace {

// All distinct sub-multisets of size k of a sorted list, as index lists.
void subsets(const std::vector<Rational>& v, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < v.size(); ++i) {
        if (i > from && v[i] == v[i - 1]) continue;
        cur.push_back(i);
        subsets(v, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Rational> pick(const std::vector<Rational>& v, const std::vector<std::size_t>& idx, bool complement) {
    std::vector<Rational> out;
    std::vector<bool> in(v.size(), false);
    for (auto i : idx) in[i] = true;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (in[i] != complement) out.push_back(v[i]);
    return out;
}

}  // namespace

std::optional<Bipartition> find_bipartition(const Spectrum& sigma, const DiagonalList& diag, std::size_t budget) {
    const std::size_t n = sigma.size();
    if (diag.size() != n) throw InputError("spectrum and diagonal lengths differ");
    auto lam = sigma.values();
    auto d = diag.sorted_desc();
    std::vector<Rational> rest_lam(lam.begin() + 1, lam.end());

    std::map<std::pair<std::vector<Rational>, std::vector<Rational>>, std::optional<HCertificate>> memo;
    auto member = [&](const std::vector<Rational>& l, const std::vector<Rational>& a) -> std::optional<HCertificate> {
        auto key = std::make_pair(l, a);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        auto o = search_with_diag(Spectrum(l), DiagonalList(a), budget);
        if (o.status == SearchStatus::Exhausted) throw BudgetExhausted("search budget exhausted in bipartition search");
        memo[key] = o.cert;
        return o.cert;
    };

    for (std::size_t k = 1; k < n; ++k) {
        // first part: lambda_1 plus k-1 of the rest
        std::vector<std::vector<std::size_t>> eig_sets, diag_sets;
        std::vector<std::size_t> cur;
        subsets(rest_lam, k - 1, 0, cur, eig_sets);
        subsets(d, k, 0, cur, diag_sets);
        for (const auto& es : eig_sets) {
            auto l1 = pick(rest_lam, es, false);
            l1.insert(l1.begin(), lam[0]);
            auto l2 = pick(rest_lam, es, true);
            Rational s1 = sum(l1);
            for (const auto& ds : diag_sets) {
                auto a1 = pick(d, ds, false);
                if (sum(a1) != s1) continue;
                auto a2 = pick(d, ds, true);
                auto c1 = member(l1, a1);
                if (!c1) continue;
                auto c2 = member(l2, a2);
                if (!c2) continue;
                return Bipartition{l1, a1, l2, a2, *c1, *c2};
            }
        }
    }
    return std::nullopt;
}

bool is_h_star(const Spectrum& sigma, const DiagonalList& diag, std::size_t budget) {
    auto o = search_with_diag(sigma, diag, budget);
    if (o.status == SearchStatus::Exhausted) throw BudgetExhausted("search budget exhausted");
    if (o.status == SearchStatus::NotMember)
        throw NotRealizable("is_h_star called on a list outside H_n(diag)");
    return !find_bipartition(sigma, diag, budget).has_value();
}

// ---- materialisation ---------------------------------------------------------------------------------

SymMatrix materialize(const HCertificate& cert, double tol) {
    switch (cert.kind()) {
        case Kind::Leaf1: return SymMatrix::diagonal({cert.a(0).to_double()});
        case Kind::Leaf2: return realize_2x2(cert.lambda(0), cert.lambda(1), cert.a(0), cert.a(1));
        case Kind::Node: {
            GlueInput in;
            in.a = materialize(cert.top(), tol);
            in.pos = cert.slot();
            in.b = materialize(cert.bottom(), tol);
            in.tol = tol;
            return smigoc_glue(in).c;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace sniep
