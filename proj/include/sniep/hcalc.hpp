#pragma once

#include "sniep/numkit.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sniep {

// Decomposition tree witnessing (lambda_1; ...) in H_n(a_1, ...).
//
// Orderings used throughout:
//   eigenvalues(leaf2) = (l1, l2)          diagonal(leaf2) = (a1, a2)
//   eigenvalues(node)  = top ++ bottom minus its Perron root
//   diagonal(node)     = top minus slot ++ bottom
// so the diagonal order is also the row order of materialize().
class HCertificate {
public:
    enum class Kind { Leaf1, Leaf2, Node };

    static HCertificate leaf1(const Rational& lambda, const Rational& a);
    static HCertificate leaf2(const Rational& l1, const Rational& l2, const Rational& a1, const Rational& a2);
    // slot indexes top.diagonal(); its value should be c = bottom.perron().
    static HCertificate node(const HCertificate& top, const HCertificate& bottom, const Rational& c,
                             std::size_t slot);

    Kind kind() const;
    std::size_t size() const;
    const Rational& perron() const;
    std::vector<Rational> eigenvalues() const;
    std::vector<Rational> diagonal() const;
    Spectrum spectrum() const { return Spectrum::from_unordered(eigenvalues()); }

    // leaf data: lambda(0..1), a(0..1)
    const Rational& lambda(std::size_t i) const;
    const Rational& a(std::size_t i) const;
    // node data
    const HCertificate& top() const;
    const HCertificate& bottom() const;
    const Rational& c() const;
    std::size_t slot() const;

    bool empty() const { return !d_; }

private:
    struct Data;
    std::shared_ptr<const Data> d_;
};

Validation validate_certificate(const HCertificate& cert);
std::string describe(const HCertificate& cert);

// ---- search -------------------------------------------------------------------

enum class SearchStatus { Found, NotMember, Exhausted };

struct SearchOutcome {
    SearchStatus status = SearchStatus::NotMember;
    std::optional<HCertificate> cert;
    std::size_t expansions = 0;
};

constexpr std::size_t kDefaultBudget = 1000000;

SearchOutcome search_with_diag(const Spectrum& sigma, const DiagonalList& diag,
                               std::size_t budget = kDefaultBudget);

// ---- transformers ---------------------------------------------------------------

// Raises the Perron value and diagonal entry `diag_index` by eps.
HCertificate perron_increase(const HCertificate& cert, const Rational& eps, std::size_t diag_index = 0);

// (rho + eps; ..., lambda_t - eps, ...) with the same diagonal, t an eigenvalue index >= 1.
HCertificate guo_minus(const HCertificate& cert, std::size_t target, const Rational& eps);

struct GuoPlusResult {
    HCertificate cert;
    std::size_t s = 0, t = 0;  // diagonal indices that gained eps, s < t
};
GuoPlusResult guo_plus(const HCertificate& cert, std::size_t target, const Rational& eps);

struct StripResult {
    HCertificate cert;
    // New diagonal = old diagonal with `drop` removed and `keep` holding a_keep + a_drop.
    std::size_t keep = 0, drop = 0;
    std::size_t s() const { return keep < drop ? keep : drop; }
    std::size_t t() const { return keep < drop ? drop : keep; }
};
// Removes the zero eigenvalue at index `target` (>= 1).
StripResult strip_zero(const HCertificate& cert, std::size_t target);
// Removes some zero among the non-Perron eigenvalues.
StripResult strip_zero(const HCertificate& cert);

// Certificate for the union; eigenvalues (l1, m1, l-rest, m-rest), diagonal c1 ++ c2.
HCertificate hunion(const HCertificate& c1, const HCertificate& c2);

struct Place {
    enum Where { Rest, First, Second, Left, Right };
    Where where = Rest;
    std::size_t index = 0;
};

// cert == node(rest, leaf2(c; lambda | a_s, a_t)) with lambda a minimal eigenvalue.
struct PeelResult {
    HCertificate rest;
    std::size_t slot = 0;  // position of c in rest.diagonal()
    Rational c, lambda, as, at;
    std::vector<Place> place;  // old diagonal index -> Rest/First/Second
    HCertificate assemble() const;
};
PeelResult peel(const HCertificate& cert);

struct AntiGuoResult {
    Rational eps;
    HCertificate left, right;
    std::vector<Place> place;  // old diagonal index -> Left/Right position
};
AntiGuoResult anti_guo_split(const HCertificate& cert);

// Collapses nodes with a one-element part.  perm maps old diagonal index to new.
struct Simplified {
    HCertificate cert;
    std::vector<std::size_t> perm;
};
Simplified simplify(const HCertificate& cert);

bool is_h_star(const Spectrum& sigma, const DiagonalList& diag, std::size_t budget = kDefaultBudget);

struct Bipartition {
    std::vector<Rational> sigma1, diag1, sigma2, diag2;
    HCertificate cert1, cert2;
};
// First bipartition with both parts in H, if any.
std::optional<Bipartition> find_bipartition(const Spectrum& sigma, const DiagonalList& diag,
                                            std::size_t budget = kDefaultBudget);

SymMatrix materialize(const HCertificate& cert, double tol = 1e-9);

}  // namespace sniep
