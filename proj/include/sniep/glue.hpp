#pragma once

#include "sniep/numkit.hpp"

#include <cstddef>
#include <optional>

namespace sniep {

struct GlueInput {
    SymMatrix a;       // k x k, a(pos, pos) = c
    std::size_t pos = 0;
    SymMatrix b;       // l x l, Perron root c
    std::optional<OrthMatrix> x;  // diagonalises a
    std::optional<OrthMatrix> y;  // diagonalises b, first column the Perron vector
    double tol = 1e-9;
};

struct GlueResult {
    // Rows of a (except pos) in their original order, then the rows of b.
    SymMatrix c;
    OrthMatrix z;
    // Eigenvalue belonging to each column of z: those of a, then b's without the Perron root.
    std::vector<double> eigenvalues;
};

GlueResult smigoc_glue(const GlueInput& in);

// mu merged with nu minus its Perron value c.
Spectrum glue_spectra(const Spectrum& mu, const Spectrum& nu, const Rational& c);

}  // namespace sniep
