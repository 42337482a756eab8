#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "deltalog/errors.hpp"

namespace deltalog {

/// Finite enumerable domain for law checking: elements are indices 0..size-1,
/// `show` renders one for violation reports.
struct FiniteDomain {
    std::size_t size = 0;
    std::function<std::string(std::size_t)> show;

    std::string render(std::size_t i) const { return show ? show(i) : std::to_string(i); }
};

/// A monoid of changes acting on a base domain: apply is ⊕, combine is +.
struct ChangeActionSpec {
    FiniteDomain base;
    FiniteDomain change;
    std::function<std::size_t(std::size_t, std::size_t)> apply;
    std::function<std::size_t(std::size_t, std::size_t)> combine;
    std::size_t zero = 0;
};

/// A function together with a candidate derivative.
struct DifferentialMap {
    std::function<std::size_t(std::size_t)> underlying;
    std::function<std::size_t(std::size_t, std::size_t)> derivative;
};

/// minus(a, b) yields a change sending b to a.
struct MinusOperator {
    std::function<std::size_t(std::size_t, std::size_t)> minus;
};

struct LawViolation {
    std::string law;
    std::string witness;
};
using LawReport = std::vector<LawViolation>;

struct VerifyOptions {
    /// Exhaustive checking up to this many tested tuples, then seeded sampling.
    std::size_t max_tuples = 100000;
    std::optional<std::uint64_t> seed;
};

/// Empty report iff the monoid and action laws hold on all tested tuples.
LawReport verify_change_action(const ChangeActionSpec& spec, const VerifyOptions& opts = {});

/// Empty report iff the derivative condition and both regularity equations hold.
LawReport verify_differential(const DifferentialMap& f, const ChangeActionSpec& src,
                              const ChangeActionSpec& dst, const VerifyOptions& opts = {});

/// Empty report iff apply(b, minus(a, b)) == a for all tested a, b.
LawReport verify_minus(const MinusOperator& minus, const ChangeActionSpec& spec,
                       const VerifyOptions& opts = {});

/// Chain rule: derivative of g∘f is ∂g(f(a), ∂f(a, δ)).
DifferentialMap chain(const DifferentialMap& f, const DifferentialMap& g);

/// Componentwise action on pairs; indices pair as i * |B| + j.
ChangeActionSpec product(const ChangeActionSpec& a, const ChangeActionSpec& b);

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t b_size);
std::pair<std::size_t, std::size_t> unpair_index(std::size_t k, std::size_t b_size);

/// Derivative induced by a minus operator: ∂f(a, δ) = f(a ⊕ δ) ⊖ f(a).
/// Satisfies the derivative condition by construction; regularity is not
/// guaranteed and must be checked by the caller where required.
DifferentialMap derivative_from_minus(const MinusOperator& minus,
                                      std::function<std::size_t(std::size_t)> f,
                                      const ChangeActionSpec& src);

/// Reassemble a full derivative of a binary map on product(a, b) from its two
/// partial derivatives: d((a,b),(δa,δb)) = d1((a,b),δa) + d2((a⊕δa,b),δb).
/// The partials take a paired base index and a single-factor change index.
DifferentialMap combine_partials(
    std::function<std::size_t(std::size_t)> f,
    std::function<std::size_t(std::size_t, std::size_t)> d1,
    std::function<std::size_t(std::size_t, std::size_t)> d2, const ChangeActionSpec& a,
    const ChangeActionSpec& b, const ChangeActionSpec& c);

// Shipped change actions, used by the engine's tests and the harness alike.

/// One-element change set; apply is the first projection.
ChangeActionSpec make_discrete(std::size_t n);

/// P({0..atoms-1}) acting on itself by union; elements are bitmasks.
ChangeActionSpec make_powerset_union(unsigned atoms);

/// The disjoint (adds, removes) change action on P({0..atoms-1}). Base
/// elements are bitmasks; change indices enumerate disjoint bitmask pairs.
ChangeActionSpec make_boolean_delta_action(unsigned atoms);

/// Bitmask pair behind a boolean-delta change index.
std::pair<std::uint32_t, std::uint32_t> boolean_delta_parts(unsigned atoms, std::size_t index);
/// Change index of a disjoint (adds, removes) bitmask pair.
std::size_t boolean_delta_index(unsigned atoms, std::uint32_t adds, std::uint32_t removes);

/// a ⊖⊥ b and a ⊖⊤ b on the boolean-delta action over `atoms`.
MinusOperator make_minus_bot(unsigned atoms);
MinusOperator make_minus_top(unsigned atoms);

}  // namespace deltalog
