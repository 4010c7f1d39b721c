#pragma once

#include "sniep/numkit.hpp"

#include <string>
#include <vector>

namespace sniep {

struct FiedlerVerdict {
    bool necessary_ok = false;
    bool sufficient_ok = false;
    // First failing inequality of the condition group that was asked for,
    // with 1-based indices into the sorted lists.  Empty when it holds.
    std::string first_violated;
};

// Both functions sort their inputs internally and fill both flags.
FiedlerVerdict fiedler_necessary(const Spectrum& sigma, const DiagonalList& diag);
FiedlerVerdict fiedler_sufficient(const Spectrum& sigma, const DiagonalList& diag);

// Fast forms over already sorted (non-increasing) lists.
bool necessary_sorted(const std::vector<Rational>& lam, const std::vector<Rational>& a,
                      std::string* why = nullptr);
bool sufficient_sorted(const std::vector<Rational>& lam, const std::vector<Rational>& a,
                       std::string* why = nullptr);

// lambda1 >= max(a1, a2) and lambda1 + lambda2 = a1 + a2, with a1, a2 >= 0.
bool check_n2(const Rational& l1, const Rational& l2, const Rational& a1, const Rational& a2,
              std::string* why = nullptr);

// [[a1, w], [w, a2]] with w = sqrt((l1 - a1)(l1 - a2)); the diagonal keeps the given order.
SymMatrix realize_2x2(const Spectrum& sigma, const DiagonalList& diag);
SymMatrix realize_2x2(const Rational& l1, const Rational& l2, const Rational& a1, const Rational& a2);

bool check_n3(const Spectrum& sigma, const DiagonalList& diag);

struct N3Split {
    // (l1; l2) over (a1, c) and (c; l3) over (a2, a3), lists sorted.
    Rational l1, l2, l3, a1, a2, a3, c;
};
N3Split split_n3(const Spectrum& sigma, const DiagonalList& diag);

}  // namespace sniep
