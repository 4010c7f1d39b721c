#pragma once

#include "sniep/hcalc.hpp"
#include "sniep/numkit.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace sniep {

struct S1Result {
    bool ok = false;
    Rational slack;  // lambda_1 + lambda_n + sum of the negative T_i
};

// The T_i terms of the S1 criterion, i = 2..floor(n/2), then the middle term for odd n.
std::vector<Rational> s1_terms(const Spectrum& sigma);
S1Result s1_check(const Spectrum& sigma);
Rational s1_negativity(const Spectrum& sigma);
// Throws NotRealizable when sigma fails S1.  A one-element list has margin lambda_1.
Rational s1_margin(const Spectrum& sigma);

struct SotoCertificate;

struct SotoPart {
    std::vector<Rational> list;  // sorted, head >= 0
    // Part 0: the margin m taken off lambda_1.  Other parts: the shift s added to their head.
    Rational adjust;
    // Certificate at level - 1 for the list with its head moved by adjust.
    std::shared_ptr<const SotoCertificate> child;
};

struct SotoCertificate {
    int level = 1;
    std::vector<Rational> spectrum;  // sorted non-increasing
    // level 1
    std::vector<Rational> t;
    Rational slack;
    // level >= 2; parts[0] holds lambda_1
    std::vector<SotoPart> parts;
    Rational gamma;
};

Validation validate_soto(const SotoCertificate& cert);

struct SpOptions {
    std::size_t max_parts = 4;
    std::size_t max_n = 12;
    std::size_t budget = 1000000;  // partitions examined, over all levels
};

enum class SpStatus { Member, NotMember, Exhausted };

struct SpOutcome {
    SpStatus status = SpStatus::NotMember;
    std::optional<SotoCertificate> cert;
    Rational threshold;  // least head value for which the tail passes S_p
    std::size_t partitions = 0;
};

SpOutcome sp_check(const Spectrum& sigma, int p, const SpOptions& opt = {});
// These throw BudgetExhausted when the partition budget runs out.
Rational sp_negativity(const Spectrum& sigma, int p, const SpOptions& opt = {});
// Throws NotRealizable for a non-member.
Rational sp_margin(const Spectrum& sigma, int p, const SpOptions& opt = {});

// Wraps cert in one-part levels until it reaches `level`.
SotoCertificate lift(const SotoCertificate& cert, int level);

SotoCertificate h_to_sp(const HCertificate& cert);

}  // namespace sniep
