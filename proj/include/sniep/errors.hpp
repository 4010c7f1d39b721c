#pragma once

#include <stdexcept>
#include <string>

namespace sniep {

// Malformed or inconsistent input (bad lengths, unsorted head, bad JSON).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A realisability precondition failed; the message names the inequality.
struct NotRealizable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Perron vector has mixed signs: the matrix is reducible with a repeated
// Perron root and must be split into blocks first.
struct ReducibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A certificate reached an input that needs an irreducible (H*) member.
struct NotIrreducible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A search or enumeration ran past its budget; the answer is unknown.
struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sniep
