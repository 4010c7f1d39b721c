#include "sniep/numkit.hpp"

#include "sniep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sniep {

// ---- Spectrum / DiagonalList ----------------------------------------------

std::vector<Rational> sorted_desc(std::vector<Rational> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

Spectrum::Spectrum(std::vector<Rational> values) : v_(std::move(values)) {
    if (v_.empty()) throw InputError("spectrum must be nonempty");
    for (std::size_t i = 1; i < v_.size(); ++i)
        if (v_[i] > v_[0])
            throw InputError("Perron value must lead: " + v_[i].str() + " exceeds head " + v_[0].str());
    std::sort(v_.begin() + 1, v_.end(), std::greater<>());
}

Spectrum Spectrum::from_unordered(std::vector<Rational> values) {
    return Spectrum(sorted_desc(std::move(values)));
}

std::vector<double> Spectrum::to_double() const {
    std::vector<double> out;
    for (const auto& x : v_) out.push_back(x.to_double());
    return out;
}

DiagonalList::DiagonalList(std::vector<Rational> values) : v_(std::move(values)) {
    for (const auto& x : v_)
        if (x.sign() < 0) throw InputError("negative diagonal entry " + x.str());
}

std::vector<Rational> DiagonalList::sorted_desc() const { return sniep::sorted_desc(v_); }

std::vector<double> DiagonalList::to_double() const {
    std::vector<double> out;
    for (const auto& x : v_) out.push_back(x.to_double());
    return out;
}

// ---- matrices ---------------------------------------------------------------

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    SymMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw InputError("matrix is not square");
        for (std::size_t j = 0; j <= i; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
    SymMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
}

SymMatrix SymMatrix::identity(std::size_t n) { return diagonal(std::vector<double>(n, 1.0)); }

std::vector<std::vector<double>> SymMatrix::rows() const {
    std::vector<std::vector<double>> r(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
    return r;
}

std::vector<double> SymMatrix::diag() const {
    std::vector<double> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
    return d;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::fabs(x));
    return m;
}

double SymMatrix::min_entry() const {
    if (a_.empty()) return 0.0;
    return *std::min_element(a_.begin(), a_.end());
}

OrthMatrix OrthMatrix::identity(std::size_t n) {
    OrthMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> OrthMatrix::column(std::size_t col) const {
    return {c_.begin() + static_cast<long>(col * n_), c_.begin() + static_cast<long>((col + 1) * n_)};
}

void OrthMatrix::set_column(std::size_t col, const std::vector<double>& v) {
    std::copy(v.begin(), v.end(), c_.begin() + static_cast<long>(col * n_));
}

double OrthMatrix::orth_error() const {
    double e = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            double d = 0.0;
            for (std::size_t k = 0; k < n_; ++k) d += (*this)(k, i) * (*this)(k, j);
            e = std::max(e, std::fabs(d - (i == j ? 1.0 : 0.0)));
        }
    return e;
}

SymMatrix reconstruct(const OrthMatrix& v, const std::vector<double>& d) {
    std::size_t n = v.order();
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += v(i, k) * d[k] * v(j, k);
            a.set(i, j, s);
        }
    return a;
}

// ---- Jacobi -----------------------------------------------------------------

EigenDecomposition jacobi_eig(const SymMatrix& m, JacobiOptions opt) {
    if (opt.tol <= 0) throw InputError("tolerance must be positive");
    const std::size_t n = m.order();
    std::vector<std::vector<double>> a = m.rows();
    for (const auto& row : a)
        for (double x : row)
            if (!std::isfinite(x)) throw InputError("matrix has non-finite entries");

    OrthMatrix v = OrthMatrix::identity(n);
    double scale = 0.0;
    for (const auto& row : a)
        for (double x : row) scale += x * x;
    scale = std::sqrt(scale);

    auto off = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += a[i][j] * a[i][j];
        return std::sqrt(s);
    };

    // Sweep until the off-diagonal mass is at rounding level; the spec
    // tolerance is only the failure threshold.
    const double target = std::max(scale, 1e-300) * 1e-15;
    bool converged = off() <= target;
    for (int sweep = 0; sweep < opt.max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p][q];
                if (apq == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = a[q][p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        converged = off() <= target;
    }
    if (!converged && off() > opt.tol * std::max(1.0, scale))
        throw ConvergenceError("Jacobi did not converge in " + std::to_string(opt.max_sweeps) +
                               " sweeps; matrix may be ill-conditioned");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
    EigenDecomposition out{std::vector<double>(n), OrthMatrix(n)};
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = a[order[i]][order[i]];
        out.vectors.set_column(i, v.column(order[i]));
    }
    return out;
}

// ---- verification -------------------------------------------------------------

std::string VerificationReport::summary() const {
    std::ostringstream os;
    os << (pass() ? "pass" : "FAIL") << " symmetric=" << symmetric_ok << " nonneg=" << nonneg_ok
       << " min_entry=" << min_entry << " spectrum_err=" << spectrum_err;
    if (diag_checked) os << " diag_err=" << diag_err;
    os << " tol=" << tol;
    return os.str();
}

static double sorted_max_diff(std::vector<double> x, std::vector<double> y) {
    std::sort(x.begin(), x.end(), std::greater<>());
    std::sort(y.begin(), y.end(), std::greater<>());
    double e = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) e = std::max(e, std::fabs(x[i] - y[i]));
    return e;
}

VerificationReport verify_realization(const SymMatrix& a, const std::vector<double>& sigma,
                                      const std::optional<std::vector<double>>& diag, double tol) {
    if (sigma.size() != a.order()) throw InputError("spectrum length does not match matrix order");
    if (diag && diag->size() != a.order()) throw InputError("diagonal length does not match matrix order");
    VerificationReport r;
    r.tol = tol;
    r.min_entry = a.min_entry();
    r.nonneg_ok = r.min_entry >= -tol;
    auto eig = jacobi_eig(a, {tol, 100});
    r.spectrum_err = sorted_max_diff(eig.values, sigma);
    if (diag) {
        r.diag_checked = true;
        r.diag_err = sorted_max_diff(a.diag(), *diag);
    }
    return r;
}

VerificationReport verify_realization(const SymMatrix& a, const Spectrum& sigma,
                                      const std::optional<DiagonalList>& diag, double tol) {
    std::optional<std::vector<double>> d;
    if (diag) d = diag->to_double();
    return verify_realization(a, sigma.to_double(), d, tol);
}

VerificationReport verify_realization(const std::vector<std::vector<double>>& rows,
                                      const std::vector<double>& sigma,
                                      const std::optional<std::vector<double>>& diag, double tol) {
    bool sym = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw InputError("matrix is not square");
        for (std::size_t j = 0; j < i; ++j)
            if (rows[i][j] != rows[j][i]) sym = false;
    }
    auto r = verify_realization(SymMatrix::from_rows(rows), sigma, diag, tol);
    r.symmetric_ok = sym;
    for (const auto& row : rows)
        for (double x : row) r.min_entry = std::min(r.min_entry, x);
    r.nonneg_ok = r.min_entry >= -tol;
    return r;
}

// ---- Perron vector ----------------------------------------------------------------

static double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

EigenDecomposition perron_eigenbasis(const SymMatrix& a, double tol) {
    const std::size_t n = a.order();
    auto eig = jacobi_eig(a, {tol, 100});
    if (n == 0) return eig;

    const double cluster_tol = tol * std::max(1.0, a.max_abs());
    std::size_t d = 1;
    while (d < n && eig.values[d] >= eig.values[0] - cluster_tol) ++d;

    std::vector<double> v(n, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        auto q = eig.vectors.column(i);
        double w = std::accumulate(q.begin(), q.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k) v[k] += w * q[k];
    }
    double nv = std::sqrt(dot(v, v));
    if (nv < 1e-8) {
        v = eig.vectors.column(0);
        nv = 1.0;
    }
    for (double& x : v) x /= nv;
    std::size_t big = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (std::fabs(v[k]) > std::fabs(v[big])) big = k;
    if (v[big] < 0)
        for (double& x : v) x = -x;
    for (double x : v)
        if (x < -tol)
            throw ReducibleError("Perron vector has negative entries; split the matrix into irreducible blocks");
    for (double& x : v) x = std::max(x, 0.0);
    double renorm = std::sqrt(dot(v, v));
    for (double& x : v) x /= renorm;

    // Orthonormal completion of v inside the Perron eigenspace.
    std::vector<std::vector<double>> basis{v};
    std::vector<std::vector<double>> pool;
    for (std::size_t i = 0; i < d; ++i) pool.push_back(eig.vectors.column(i));
    for (std::size_t step = 1; step < d; ++step) {
        std::size_t best = 0;
        double best_norm = -1.0;
        std::vector<double> best_vec;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            auto r = pool[i];
            for (const auto& b : basis) {
                double c = dot(r, b);
                for (std::size_t k = 0; k < n; ++k) r[k] -= c * b[k];
            }
            double nr = std::sqrt(dot(r, r));
            if (nr > best_norm) {
                best_norm = nr;
                best = i;
                best_vec = r;
            }
        }
        for (double& x : best_vec) x /= best_norm;
        basis.push_back(best_vec);
        pool.erase(pool.begin() + static_cast<long>(best));
    }

    EigenDecomposition out{eig.values, OrthMatrix(n)};
    for (std::size_t i = 0; i < d; ++i) out.vectors.set_column(i, basis[i]);
    for (std::size_t i = d; i < n; ++i) out.vectors.set_column(i, eig.vectors.column(i));
    return out;
}

std::vector<double> perron_vector(const SymMatrix& a, double tol) {
    return perron_eigenbasis(a, tol).vectors.column(0);
}

}  // namespace sniep
