#pragma once

#include "sniep/hcalc.hpp"
#include "sniep/numkit.hpp"
#include "sniep/soules.hpp"

#include <cstddef>
#include <vector>

namespace sniep {

struct SoulesRealization {
    SoulesSpec spec;  // needs exact squares
    Spectrum sigma;
    DiagonalList diag;  // soules_diag_exact(spec, sigma)
};

// Checks the exact diagonal and nonnegativity.
Validation validate_realization(const SoulesRealization& real);

// rows, when given, receives the row of the Soules matrix behind each entry of
// the certificate's diagonal.
HCertificate soules_to_h(const SoulesRealization& real, std::vector<std::size_t>* rows = nullptr);

// Rows of the result follow the order of diag.  Throws NotIrreducible when a
// peeled 2x2 block has no slack, which happens for reducible inputs.
SoulesRealization h_star_to_soules(const Spectrum& sigma, const DiagonalList& diag, const HCertificate& cert);

struct SBarBlock {
    Spectrum sigma;
    DiagonalList diag;
    HCertificate cert;
};

// Splits a member of H_n(diag) into H* blocks.  Throws NotRealizable for non-members
// and BudgetExhausted when the search gives up.
std::vector<SBarBlock> sbar_decompose(const Spectrum& sigma, const DiagonalList& diag,
                                      std::size_t budget = kDefaultBudget);

}  // namespace sniep
