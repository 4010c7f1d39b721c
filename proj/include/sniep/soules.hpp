#pragma once

#include "sniep/numkit.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sniep {

using IndexSet = std::vector<std::size_t>;  // sorted, 0-based
using Partition = std::vector<IndexSet>;    // sorted by first element

struct SoulesSplit {
    IndexSet parent, star, starstar;
    friend bool operator==(const SoulesSplit&, const SoulesSplit&) = default;
};

// Chain of partitions N_1 = {all} ... N_n = singletons; splits[i-2] records how
// N_i arises from N_{i-1}.
struct SoulesSequence {
    std::size_t n = 0;
    std::vector<Partition> partitions;
    std::vector<SoulesSplit> splits;

    // Builds the partitions; throws InputError if a split does not apply.
    static SoulesSequence from_splits(std::size_t n, std::vector<SoulesSplit> splits);
    // Infers the split record; an inconsistent chain yields a record that
    // validate_sequence rejects.
    static SoulesSequence from_partitions(std::vector<Partition> partitions);
};

Validation validate_sequence(const SoulesSequence& seq);

Partition canonical(Partition p);

struct SoulesSpec {
    SoulesSequence seq;
    std::vector<double> x;                      // positive unit vector
    std::optional<std::vector<Rational>> x_sq;  // exact squares when known

    // x from exact squares; the squares must sum to 1 and be positive.
    static SoulesSpec from_squares(SoulesSequence seq, std::vector<Rational> x_sq);
    static SoulesSpec from_vector(SoulesSequence seq, std::vector<double> x);
};

OrthMatrix build_soules_matrix(const SoulesSpec& spec);

struct SoulesRealized {
    SymMatrix a;
    std::vector<double> diag;
};

SoulesRealized soules_realize(const SoulesSpec& spec, const std::vector<double>& lambda);
SoulesRealized soules_realize(const SoulesSpec& spec, const Spectrum& sigma);

// Exact diagonal of R diag(sigma) R^T from the squared first column.
std::vector<Rational> soules_diag_exact(const SoulesSpec& spec, const Spectrum& sigma);
// Squared entries r_{ji}^2 as exact rationals, row j, column i.
std::vector<std::vector<Rational>> soules_squares_exact(const SoulesSpec& spec);

}  // namespace sniep
