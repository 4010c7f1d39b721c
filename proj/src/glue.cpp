#include "sniep/glue.hpp"

#include "sniep/errors.hpp"

#include <cmath>
#include <string>

namespace sniep {

GlueResult smigoc_glue(const GlueInput& in) {
    const std::size_t k = in.a.order(), l = in.b.order();
    if (k == 0 || l == 0) throw InputError("glue needs nonempty matrices");
    if (in.pos >= k) throw InputError("glue position out of range");
    if (in.x && in.x->order() != k) throw InputError("X has the wrong order");
    if (in.y && in.y->order() != l) throw InputError("Y has the wrong order");

    const double tol = in.tol;
    if (in.a.min_entry() < -tol) throw NotRealizable("glue: A has a negative entry");
    if (in.b.min_entry() < -tol) throw NotRealizable("glue: B has a negative entry");

    EigenDecomposition ey;
    if (in.y) {
        ey.vectors = *in.y;
        ey.values = jacobi_eig(in.b, {tol, 100}).values;
    } else {
        ey = perron_eigenbasis(in.b, tol);
    }
    const double c = in.a(in.pos, in.pos);
    const double scale = std::max({1.0, in.a.max_abs(), in.b.max_abs()});
    if (std::fabs(ey.values[0] - c) > tol * scale)
        throw NotRealizable("glue: Perron root of B (" + std::to_string(ey.values[0]) +
                            ") differs from the designated diagonal value " + std::to_string(c));

    EigenDecomposition ex;
    if (in.x) {
        ex.vectors = *in.x;
        ex.values = jacobi_eig(in.a, {tol, 100}).values;
    } else {
        ex = jacobi_eig(in.a, {tol, 100});
    }

    if (k == 1) return {in.b, ey.vectors, ey.values};
    if (l == 1) return {in.a, ex.vectors, ex.values};

    // rows of A other than pos, in order
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; ++i)
        if (i != in.pos) keep.push_back(i);

    const std::size_t m = k + l - 1;
    std::vector<double> v = ey.vectors.column(0);
    SymMatrix cm(m);
    for (std::size_t i = 0; i < k - 1; ++i) {
        for (std::size_t j = 0; j <= i; ++j) cm.set(i, j, in.a(keep[i], keep[j]));
        double ai = in.a(keep[i], in.pos);
        if (ai < -tol) throw NotRealizable("glue: column of A at the glue position has a negative entry");
        for (std::size_t j = 0; j < l; ++j) cm.set(k - 1 + j, i, ai * v[j]);
    }
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j <= i; ++j) cm.set(k - 1 + i, k - 1 + j, in.b(i, j));

    OrthMatrix z(m);
    for (std::size_t col = 0; col < k; ++col) {
        for (std::size_t i = 0; i < k - 1; ++i) z(i, col) = ex.vectors(keep[i], col);
        double u = ex.vectors(in.pos, col);
        for (std::size_t j = 0; j < l; ++j) z(k - 1 + j, col) = v[j] * u;
    }
    for (std::size_t col = 1; col < l; ++col)
        for (std::size_t j = 0; j < l; ++j) z(k - 1 + j, k - 1 + col) = ey.vectors(j, col);

    std::vector<double> eig = ex.values;
    eig.insert(eig.end(), ey.values.begin() + 1, ey.values.end());
    return {cm, z, eig};
}

Spectrum glue_spectra(const Spectrum& mu, const Spectrum& nu, const Rational& c) {
    if (nu.perron() != c)
        throw InputError("glue value " + c.str() + " is not the Perron value " + nu.perron().str());
    std::vector<Rational> all = mu.values();
    for (std::size_t i = 1; i < nu.size(); ++i) all.push_back(nu[i]);
    return Spectrum::from_unordered(std::move(all));
}

}  // namespace sniep
