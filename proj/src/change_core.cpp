#include "deltalog/change_core.hpp"

#include <memory>
#include <random>
#include <sstream>

namespace deltalog {

namespace {

// Either a full cartesian sweep or `samples` seeded draws per law family.
class TupleSource {
public:
    TupleSource(std::vector<std::size_t> dims, const VerifyOptions& opts)
        : dims_(std::move(dims)) {
        total_ = 1;
        for (auto d : dims_) total_ *= d;
        exhaustive_ = total_ <= opts.max_tuples;
        if (!exhaustive_) {
            if (!opts.seed) {
                throw DomainTooLargeError(
                    "law check over " + std::to_string(total_) +
                    " tuples exceeds the exhaustive cap of " + std::to_string(opts.max_tuples) +
                    "; supply a sampling seed");
            }
            rng_.emplace(*opts.seed);
            samples_ = opts.max_tuples;
        }
    }

    template <typename Fn>
    void for_each(Fn&& fn) {
        std::vector<std::size_t> t(dims_.size(), 0);
        if (exhaustive_) {
            if (total_ == 0) return;
            while (true) {
                fn(t);
                std::size_t k = 0;
                for (; k < t.size(); ++k) {
                    if (++t[k] < dims_[k]) break;
                    t[k] = 0;
                }
                if (k == t.size()) break;
            }
        } else {
            for (std::size_t s = 0; s < samples_; ++s) {
                for (std::size_t k = 0; k < t.size(); ++k) {
                    t[k] = std::uniform_int_distribution<std::size_t>(0, dims_[k] - 1)(*rng_);
                }
                fn(t);
            }
        }
    }

private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 0;
    bool exhaustive_ = true;
    std::size_t samples_ = 0;
    std::optional<std::mt19937_64> rng_;
};

std::string witness(const FiniteDomain& dom, std::initializer_list<std::size_t> vals) {
    std::ostringstream out;
    bool first = true;
    for (auto v : vals) {
        if (!first) out << ", ";
        out << dom.render(v);
        first = false;
    }
    return out.str();
}

constexpr std::size_t kMaxViolations = 16;

}  // namespace

LawReport verify_change_action(const ChangeActionSpec& spec, const VerifyOptions& opts) {
    LawReport report;
    auto add = [&](std::string law, std::string w) {
        if (report.size() < kMaxViolations) report.push_back({std::move(law), std::move(w)});
    };
    const auto n = spec.base.size;
    const auto m = spec.change.size;

    TupleSource ids({m}, opts);
    ids.for_each([&](const std::vector<std::size_t>& t) {
        auto d = t[0];
        if (spec.combine(d, spec.zero) != d) {
            add("monoid right identity: combine(d, 0) != d", spec.change.render(d));
        }
        if (spec.combine(spec.zero, d) != d) {
            add("monoid left identity: combine(0, d) != d", spec.change.render(d));
        }
    });

    TupleSource assoc({m, m, m}, opts);
    assoc.for_each([&](const std::vector<std::size_t>& t) {
        auto [d1, d2, d3] = std::tuple{t[0], t[1], t[2]};
        if (spec.combine(spec.combine(d1, d2), d3) != spec.combine(d1, spec.combine(d2, d3))) {
            add("monoid associativity", witness(spec.change, {d1, d2, d3}));
        }
    });

    TupleSource zeros({n}, opts);
    zeros.for_each([&](const std::vector<std::size_t>& t) {
        if (spec.apply(t[0], spec.zero) != t[0]) {
            add("action on zero: apply(a, 0) != a", spec.base.render(t[0]));
        }
    });

    TupleSource acts({n, m, m}, opts);
    acts.for_each([&](const std::vector<std::size_t>& t) {
        auto [a, d1, d2] = std::tuple{t[0], t[1], t[2]};
        if (spec.apply(a, spec.combine(d1, d2)) != spec.apply(spec.apply(a, d1), d2)) {
            add("action compatibility: apply(a, d1 + d2) != apply(apply(a, d1), d2)",
                "a=" + spec.base.render(a) + "; " + witness(spec.change, {d1, d2}));
        }
    });

    return report;
}

LawReport verify_differential(const DifferentialMap& f, const ChangeActionSpec& src,
                              const ChangeActionSpec& dst, const VerifyOptions& opts) {
    LawReport report;
    auto add = [&](std::string law, std::string w) {
        if (report.size() < kMaxViolations) report.push_back({std::move(law), std::move(w)});
    };
    const auto n = src.base.size;
    const auto m = src.change.size;

    TupleSource cond({n, m}, opts);
    cond.for_each([&](const std::vector<std::size_t>& t) {
        auto [a, d] = std::tuple{t[0], t[1]};
        if (f.underlying(src.apply(a, d)) != dst.apply(f.underlying(a), f.derivative(a, d))) {
            add("derivative condition: f(a ⊕ d) != f(a) ⊕ ∂f(a, d)",
                "a=" + src.base.render(a) + ", d=" + src.change.render(d));
        }
    });

    TupleSource zeros({n}, opts);
    zeros.for_each([&](const std::vector<std::size_t>& t) {
        if (f.derivative(t[0], src.zero) != dst.zero) {
            add("regularity: ∂f(a, 0) != 0", src.base.render(t[0]));
        }
    });

    TupleSource reg({n, m, m}, opts);
    reg.for_each([&](const std::vector<std::size_t>& t) {
        auto [a, d1, d2] = std::tuple{t[0], t[1], t[2]};
        auto lhs = f.derivative(a, src.combine(d1, d2));
        auto rhs = dst.combine(f.derivative(a, d1), f.derivative(src.apply(a, d1), d2));
        if (lhs != rhs) {
            add("regularity: ∂f(a, d1 + d2) != ∂f(a, d1) + ∂f(a ⊕ d1, d2)",
                "a=" + src.base.render(a) + "; " + witness(src.change, {d1, d2}));
        }
    });

    return report;
}

LawReport verify_minus(const MinusOperator& minus, const ChangeActionSpec& spec,
                       const VerifyOptions& opts) {
    LawReport report;
    TupleSource pairs({spec.base.size, spec.base.size}, opts);
    pairs.for_each([&](const std::vector<std::size_t>& t) {
        auto [a, b] = std::tuple{t[0], t[1]};
        if (spec.apply(b, minus.minus(a, b)) != a && report.size() < kMaxViolations) {
            report.push_back({"minus law: apply(b, minus(a, b)) != a",
                              "a=" + spec.base.render(a) + ", b=" + spec.base.render(b)});
        }
    });
    return report;
}

DifferentialMap chain(const DifferentialMap& f, const DifferentialMap& g) {
    return DifferentialMap{
        [f, g](std::size_t a) { return g.underlying(f.underlying(a)); },
        [f, g](std::size_t a, std::size_t d) {
            return g.derivative(f.underlying(a), f.derivative(a, d));
        }};
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t b_size) {
    return i * b_size + j;
}

std::pair<std::size_t, std::size_t> unpair_index(std::size_t k, std::size_t b_size) {
    return {k / b_size, k % b_size};
}

ChangeActionSpec product(const ChangeActionSpec& a, const ChangeActionSpec& b) {
    ChangeActionSpec out;
    auto show_pair = [](const FiniteDomain& da, const FiniteDomain& db, std::size_t stride) {
        return [da, db, stride](std::size_t k) {
            auto [i, j] = unpair_index(k, stride);
            return "(" + da.render(i) + ", " + db.render(j) + ")";
        };
    };
    out.base = {a.base.size * b.base.size, show_pair(a.base, b.base, b.base.size)};
    out.change = {a.change.size * b.change.size,
                  show_pair(a.change, b.change, b.change.size)};
    const auto bb = b.base.size;
    const auto bc = b.change.size;
    out.apply = [a, b, bb, bc](std::size_t x, std::size_t d) {
        auto [xa, xb] = unpair_index(x, bb);
        auto [da, db] = unpair_index(d, bc);
        return pair_index(a.apply(xa, da), b.apply(xb, db), bb);
    };
    out.combine = [a, b, bc](std::size_t d1, std::size_t d2) {
        auto [d1a, d1b] = unpair_index(d1, bc);
        auto [d2a, d2b] = unpair_index(d2, bc);
        return pair_index(a.combine(d1a, d2a), b.combine(d1b, d2b), bc);
    };
    out.zero = pair_index(a.zero, b.zero, bc);
    return out;
}

DifferentialMap derivative_from_minus(const MinusOperator& minus,
                                      std::function<std::size_t(std::size_t)> f,
                                      const ChangeActionSpec& src) {
    return DifferentialMap{
        f,
        [minus, f, apply = src.apply](std::size_t a, std::size_t d) {
            return minus.minus(f(apply(a, d)), f(a));
        }};
}

DifferentialMap combine_partials(
    std::function<std::size_t(std::size_t)> f,
    std::function<std::size_t(std::size_t, std::size_t)> d1,
    std::function<std::size_t(std::size_t, std::size_t)> d2, const ChangeActionSpec& a,
    const ChangeActionSpec& b, const ChangeActionSpec& c) {
    const auto bb = b.base.size;
    const auto bc = b.change.size;
    return DifferentialMap{
        f,
        [=](std::size_t ab, std::size_t dab) {
            auto [x, y] = unpair_index(ab, bb);
            auto [dx, dy] = unpair_index(dab, bc);
            auto first = d1(ab, dx);
            auto shifted = pair_index(a.apply(x, dx), y, bb);
            auto second = d2(shifted, dy);
            return c.combine(first, second);
        }};
}

ChangeActionSpec make_discrete(std::size_t n) {
    ChangeActionSpec out;
    out.base = {n, [](std::size_t i) { return std::to_string(i); }};
    out.change = {1, [](std::size_t) { return std::string("*"); }};
    out.apply = [](std::size_t a, std::size_t) { return a; };
    out.combine = [](std::size_t, std::size_t) { return std::size_t{0}; };
    out.zero = 0;
    return out;
}

namespace {

std::string show_mask(unsigned atoms, std::size_t mask) {
    std::string out = "{";
    bool first = true;
    for (unsigned i = 0; i < atoms; ++i) {
        if (mask & (std::size_t{1} << i)) {
            if (!first) out += ",";
            out += std::to_string(i + 1);
            first = false;
        }
    }
    return out + "}";
}

// Enumeration of disjoint bitmask pairs over `atoms`, shared by the change
// domain, apply/combine, and the minus operators.
struct DeltaTable {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::vector<std::size_t> index;  // (p << atoms) | q -> change index
    unsigned atoms;

    explicit DeltaTable(unsigned k) : atoms(k) {
        const std::uint32_t full = (1u << k) - 1;
        index.assign(std::size_t{1} << (2 * k), 0);
        for (std::uint32_t p = 0; p <= full; ++p) {
            for (std::uint32_t q = 0; q <= full; ++q) {
                if ((p & q) == 0) {
                    index[(std::size_t{p} << k) | q] = pairs.size();
                    pairs.emplace_back(p, q);
                }
            }
        }
    }

    std::size_t of(std::uint32_t p, std::uint32_t q) const {
        return index[(std::size_t{p} << atoms) | q];
    }
};

std::shared_ptr<const DeltaTable> delta_table(unsigned atoms) {
    return std::make_shared<const DeltaTable>(atoms);
}

}  // namespace

ChangeActionSpec make_powerset_union(unsigned atoms) {
    ChangeActionSpec out;
    const std::size_t n = std::size_t{1} << atoms;
    auto show = [atoms](std::size_t m) { return show_mask(atoms, m); };
    out.base = {n, show};
    out.change = {n, show};
    out.apply = [](std::size_t a, std::size_t d) { return a | d; };
    out.combine = [](std::size_t d1, std::size_t d2) { return d1 | d2; };
    out.zero = 0;
    return out;
}

ChangeActionSpec make_boolean_delta_action(unsigned atoms) {
    auto table = delta_table(atoms);
    const std::uint32_t full = (1u << atoms) - 1;
    ChangeActionSpec out;
    out.base = {std::size_t{1} << atoms,
                [atoms](std::size_t m) { return show_mask(atoms, m); }};
    out.change = {table->pairs.size(), [table, atoms](std::size_t i) {
                      auto [p, q] = table->pairs[i];
                      return "(" + show_mask(atoms, p) + ", " + show_mask(atoms, q) + ")";
                  }};
    out.apply = [table, full](std::size_t a, std::size_t d) {
        auto [p, q] = table->pairs[d];
        return (static_cast<std::uint32_t>(a) | p) & ~q & full;
    };
    out.combine = [table, full](std::size_t d1, std::size_t d2) {
        auto [p, q] = table->pairs[d1];
        auto [r, s] = table->pairs[d2];
        std::uint32_t adds = ((p & ~s) | r) & full;
        std::uint32_t rems = ((q & ~r) | s) & full;
        return table->of(adds, rems);
    };
    out.zero = table->of(0, 0);
    return out;
}

std::pair<std::uint32_t, std::uint32_t> boolean_delta_parts(unsigned atoms, std::size_t index) {
    return delta_table(atoms)->pairs[index];
}

std::size_t boolean_delta_index(unsigned atoms, std::uint32_t adds, std::uint32_t removes) {
    return delta_table(atoms)->of(adds, removes);
}

MinusOperator make_minus_bot(unsigned atoms) {
    auto table = delta_table(atoms);
    const std::uint32_t full = (1u << atoms) - 1;
    return MinusOperator{[table, full](std::size_t a, std::size_t b) {
        auto ua = static_cast<std::uint32_t>(a);
        auto ub = static_cast<std::uint32_t>(b);
        return table->of(ua & ~ub & full, ~ua & full);
    }};
}

MinusOperator make_minus_top(unsigned atoms) {
    auto table = delta_table(atoms);
    const std::uint32_t full = (1u << atoms) - 1;
    return MinusOperator{[table, full](std::size_t a, std::size_t b) {
        auto ua = static_cast<std::uint32_t>(a);
        auto ub = static_cast<std::uint32_t>(b);
        return table->of(ua & full, ub & ~ua & full);
    }};
}

}  // namespace deltalog
