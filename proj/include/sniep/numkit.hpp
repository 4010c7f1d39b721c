#pragma once

#include "sniep/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sniep {

struct Validation {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
};

// Eigenvalue list with the Perron value first.  The constructor rejects a
// head that is not maximal and sorts the remainder non-increasing.
class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(std::vector<Rational> values);
    Spectrum(std::initializer_list<Rational> values)
        : Spectrum(std::vector<Rational>(values)) {}

    // Sorts everything; for internally assembled multisets.
    static Spectrum from_unordered(std::vector<Rational> values);

    const std::vector<Rational>& values() const { return v_; }
    const Rational& perron() const { return v_.front(); }
    const Rational& operator[](std::size_t i) const { return v_[i]; }
    std::size_t size() const { return v_.size(); }
    std::vector<Rational> tail() const { return {v_.begin() + 1, v_.end()}; }
    std::vector<double> to_double() const;

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    std::vector<Rational> v_;
};

// Prescribed diagonal entries, all nonnegative.  Order is kept as given.
class DiagonalList {
public:
    DiagonalList() = default;
    explicit DiagonalList(std::vector<Rational> values);
    DiagonalList(std::initializer_list<Rational> values)
        : DiagonalList(std::vector<Rational>(values)) {}

    const std::vector<Rational>& values() const { return v_; }
    const Rational& operator[](std::size_t i) const { return v_[i]; }
    std::size_t size() const { return v_.size(); }
    std::vector<Rational> sorted_desc() const;
    std::vector<double> to_double() const;

private:
    std::vector<Rational> v_;
};

std::vector<Rational> sorted_desc(std::vector<Rational> v);

// Symmetric matrix stored as its lower triangle.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * (n + 1) / 2, 0.0) {}
    // Takes the lower triangle of rows; the dense verify_realization overload checks symmetry.
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static SymMatrix diagonal(const std::vector<double>& d);
    static SymMatrix identity(std::size_t n);

    std::size_t order() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[idx(i, j)]; }
    void set(std::size_t i, std::size_t j, double v) { a_[idx(i, j)] = v; }

    std::vector<std::vector<double>> rows() const;
    std::vector<double> diag() const;
    double max_abs() const;
    double min_entry() const;

private:
    static std::size_t tri(std::size_t i, std::size_t j) { return i * (i + 1) / 2 + j; }
    std::size_t idx(std::size_t i, std::size_t j) const { return i >= j ? tri(i, j) : tri(j, i); }

    std::size_t n_ = 0;
    std::vector<double> a_;
};

// Square matrix stored by columns; intended to be orthogonal.
class OrthMatrix {
public:
    OrthMatrix() = default;
    explicit OrthMatrix(std::size_t n) : n_(n), c_(n * n, 0.0) {}
    static OrthMatrix identity(std::size_t n);

    std::size_t order() const { return n_; }
    double operator()(std::size_t row, std::size_t col) const { return c_[col * n_ + row]; }
    double& operator()(std::size_t row, std::size_t col) { return c_[col * n_ + row]; }
    std::vector<double> column(std::size_t col) const;
    void set_column(std::size_t col, const std::vector<double>& v);

    // max |R^T R - I|
    double orth_error() const;

private:
    std::size_t n_ = 0;
    std::vector<double> c_;
};

struct EigenDecomposition {
    std::vector<double> values;  // non-increasing
    OrthMatrix vectors;          // column i belongs to values[i]
};

struct JacobiOptions {
    double tol = 1e-9;
    int max_sweeps = 100;
};

EigenDecomposition jacobi_eig(const SymMatrix& a, JacobiOptions opt = {});

// V diag(d) V^T
SymMatrix reconstruct(const OrthMatrix& v, const std::vector<double>& d);

struct VerificationReport {
    bool symmetric_ok = true;
    bool nonneg_ok = true;
    double min_entry = 0.0;
    double spectrum_err = 0.0;
    double diag_err = 0.0;
    bool diag_checked = false;
    double tol = 1e-9;

    bool pass() const {
        return symmetric_ok && nonneg_ok && spectrum_err <= tol && (!diag_checked || diag_err <= tol);
    }
    std::string summary() const;
};

VerificationReport verify_realization(const SymMatrix& a, const std::vector<double>& sigma,
                                      const std::optional<std::vector<double>>& diag = std::nullopt,
                                      double tol = 1e-9);
VerificationReport verify_realization(const SymMatrix& a, const Spectrum& sigma,
                                      const std::optional<DiagonalList>& diag = std::nullopt,
                                      double tol = 1e-9);
// Dense input that may not be symmetric (e.g. read from a file).
VerificationReport verify_realization(const std::vector<std::vector<double>>& rows,
                                      const std::vector<double>& sigma,
                                      const std::optional<std::vector<double>>& diag = std::nullopt,
                                      double tol = 1e-9);

// Eigenbasis whose first column is a nonnegative unit Perron vector.  When the
// Perron root is repeated, the all-ones vector is projected onto its
// eigenspace, which stays nonnegative for nonnegative matrices.
EigenDecomposition perron_eigenbasis(const SymMatrix& a, double tol = 1e-9);
std::vector<double> perron_vector(const SymMatrix& a, double tol = 1e-9);

}  // namespace sniep
