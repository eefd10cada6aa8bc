#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace bigraph::csp {

enum class Rel { le, eq, ge };

struct LinearConstraint {
    std::vector<std::pair<int, std::int64_t>> terms;   // (variable id, coefficient != 0)
    Rel rel;
    std::int64_t rhs;
};

using Solution = std::vector<std::int64_t>;   // total assignment, indexed by variable id

struct Domains {
    std::vector<std::int64_t> lower, upper;
};

// Finite-domain integer model: bounded variables plus linear constraints.
// Immutable once solving starts.
class Model {
public:
    // fresh variable with inclusive bounds; throws on inverted bounds
    int add_var(std::int64_t lower, std::int64_t upper);

    // appends a linear constraint; duplicate variable ids are coalesced and
    // zero coefficients dropped; throws on unknown variables or an empty
    // term list
    void add_linear(std::vector<std::pair<int, std::int64_t>> terms, Rel rel, std::int64_t rhs);

    // records a ground contradiction (used for encodings that are
    // structurally infeasible before any variable exists)
    void add_falsum() { falsum_ = true; }

    int var_count() const { return static_cast<int>(lower_.size()); }
    std::int64_t lower(int v) const { return lower_[v]; }
    std::int64_t upper(int v) const { return upper_[v]; }
    const std::vector<LinearConstraint>& constraints() const { return constraints_; }
    bool has_falsum() const { return falsum_; }

private:
    std::vector<std::int64_t> lower_, upper_;
    std::vector<LinearConstraint> constraints_;
    bool falsum_ = false;
};

// Bounds-consistency fixpoint over all constraints. Returns the tightened
// domains, or nullopt when some domain empties (INFEASIBLE). Never removes
// a value that participates in a solution.
std::optional<Domains> propagate(const Model& m);

bool satisfies(const Model& m, const Solution& s);

// Exhaustive, deterministic enumeration of all solutions: depth-first over
// variables in declaration order (or the given order), values ascending,
// propagating at every node. Each solution is emitted exactly once.
class SolutionStream {
public:
    explicit SolutionStream(const Model& m, std::vector<int> order = {});
    bool next(Solution& out);

private:
    struct Frame {
        int var;
        std::int64_t value;
        Domains saved;
    };
    const Model& model_;
    std::vector<int> order_;
    std::vector<std::vector<int>> watch_;   // var -> constraint indices
    Domains dom_;
    std::vector<Frame> stack_;
    bool done_ = false;
    bool started_ = false;

    bool propagate_local(int touched_var);
    bool descend();   // fix remaining vars / find next leaf
    bool backtrack_and_advance();
};

std::vector<Solution> solve_all(const Model& m);

} // namespace bigraph::csp
