#pragma once

#include "sniep/hcalc.hpp"
#include "sniep/numkit.hpp"
#include "sniep/soto.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sniep {

// One step on the working lists.  Every list keeps its Perron value in front.
//   Union(i, j): needs perron(i) >= perron(j); list i ++ list j replaces both, at min(i, j).
//   Perron(i, eps): raises the head of list i.
//   Guo(i, target, eps, sign): head += eps, element `target` (>= 1) += sign * eps.
class CStep {
public:
    enum class Op { Union, Perron, Guo };

    static CStep join(std::size_t i, std::size_t j);
    static CStep perron(std::size_t list, const Rational& eps);
    static CStep guo(std::size_t list, std::size_t target, const Rational& eps, int sign);

    Op op() const { return op_; }
    std::size_t list() const { return i_; }
    std::size_t other() const { return j_; }
    std::size_t target() const { return target_; }
    const Rational& eps() const { return eps_; }
    int sign() const { return sign_; }
    std::string describe() const;

private:
    Op op_ = Op::Perron;
    std::size_t i_ = 0, j_ = 0, target_ = 0;
    Rational eps_;
    int sign_ = 1;
};

struct CTrace {
    std::size_t n0 = 0;  // number of starting (0) lists
    std::vector<CStep> steps;
};

struct TraceResult {
    std::optional<Spectrum> final_list;  // set when every step is legal and one list remains
    std::vector<std::vector<Rational>> lists;  // state when replay stopped
    std::size_t failed_step = 0;               // index of the first illegal step
    std::string message;
    bool ok() const { return final_list.has_value(); }
};

TraceResult validate_trace(const CTrace& trace);

// Throws InputError for an illegal trace.
HCertificate c_to_h(const CTrace& trace);

CTrace sp_to_c(const SotoCertificate& cert);

}  // namespace sniep
