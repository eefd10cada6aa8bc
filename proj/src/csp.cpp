#include "bigraph/csp.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

namespace bigraph::csp {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 floor_div(i128 a, i64 b)
{
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    assert(q >= INT64_MIN && q <= INT64_MAX);
    return static_cast<i64>(q);
}

i64 ceil_div(i128 a, i64 b)
{
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    assert(q >= INT64_MIN && q <= INT64_MAX);
    return static_cast<i64>(q);
}

// One bounds-consistency pass over a single constraint. Returns false when a
// domain empties; sets `changed` for every variable whose bounds moved.
bool revise(const LinearConstraint& c, Domains& dom, std::vector<int>& changed)
{
    const bool need_le = c.rel == Rel::le || c.rel == Rel::eq;
    const bool need_ge = c.rel == Rel::ge || c.rel == Rel::eq;

    i128 min_sum = 0, max_sum = 0;
    for (const auto& [v, a] : c.terms) {
        min_sum += a > 0 ? i128(a) * dom.lower[v] : i128(a) * dom.upper[v];
        max_sum += a > 0 ? i128(a) * dom.upper[v] : i128(a) * dom.lower[v];
    }

    for (const auto& [v, a] : c.terms) {
        i128 term_min = a > 0 ? i128(a) * dom.lower[v] : i128(a) * dom.upper[v];
        i128 term_max = a > 0 ? i128(a) * dom.upper[v] : i128(a) * dom.lower[v];
        if (need_le) {
            i128 budget = i128(c.rhs) - (min_sum - term_min);
            i64 nb = a > 0 ? floor_div(budget, a) : 0;
            if (a > 0 && nb < dom.upper[v]) {
                dom.upper[v] = nb;
                changed.push_back(v);
            } else if (a < 0) {
                nb = ceil_div(budget, a);
                if (nb > dom.lower[v]) {
                    dom.lower[v] = nb;
                    changed.push_back(v);
                }
            }
        }
        if (need_ge) {
            i128 budget = i128(c.rhs) - (max_sum - term_max);
            if (a > 0) {
                i64 nb = ceil_div(budget, a);
                if (nb > dom.lower[v]) {
                    dom.lower[v] = nb;
                    changed.push_back(v);
                }
            } else {
                i64 nb = floor_div(budget, a);
                if (nb < dom.upper[v]) {
                    dom.upper[v] = nb;
                    changed.push_back(v);
                }
            }
        }
        if (dom.lower[v] > dom.upper[v]) return false;
    }
    return true;
}

bool fixpoint(const Model& m, Domains& dom, const std::vector<std::vector<int>>& watch,
              std::vector<int> queue)
{
    std::vector<bool> queued(m.constraints().size(), false);
    for (int c : queue) queued[c] = true;
    while (!queue.empty()) {
        int ci = queue.back();
        queue.pop_back();
        queued[ci] = false;
        std::vector<int> changed;
        if (!revise(m.constraints()[ci], dom, changed)) return false;
        for (int v : changed)
            for (int wc : watch[v])
                if (!queued[wc]) {
                    queued[wc] = true;
                    queue.push_back(wc);
                }
    }
    return true;
}

std::vector<std::vector<int>> build_watch(const Model& m)
{
    std::vector<std::vector<int>> watch(m.var_count());
    for (std::size_t ci = 0; ci < m.constraints().size(); ++ci)
        for (const auto& [v, a] : m.constraints()[ci].terms) watch[v].push_back(static_cast<int>(ci));
    return watch;
}

} // namespace

int Model::add_var(i64 lower, i64 upper)
{
    if (lower > upper) throw std::invalid_argument("inverted bounds");
    lower_.push_back(lower);
    upper_.push_back(upper);
    return static_cast<int>(lower_.size()) - 1;
}

void Model::add_linear(std::vector<std::pair<int, i64>> terms, Rel rel, i64 rhs)
{
    if (terms.empty()) throw std::invalid_argument("empty term list");
    std::map<int, i64> coalesced;
    for (const auto& [v, a] : terms) {
        if (v < 0 || v >= var_count()) throw std::invalid_argument("unknown variable in constraint");
        coalesced[v] += a;
    }
    LinearConstraint c;
    for (const auto& [v, a] : coalesced)
        if (a != 0) c.terms.emplace_back(v, a);
    if (c.terms.empty()) {
        // a ground fact: keep it only if it is false
        bool holds = rel == Rel::le ? 0 <= rhs : rel == Rel::ge ? 0 >= rhs : 0 == rhs;
        if (!holds) falsum_ = true;
        return;
    }
    c.rel = rel;
    c.rhs = rhs;
    constraints_.push_back(std::move(c));
}

std::optional<Domains> propagate(const Model& m)
{
    if (m.has_falsum()) return std::nullopt;
    Domains dom{
        std::vector<i64>(m.var_count()),
        std::vector<i64>(m.var_count()),
    };
    for (int v = 0; v < m.var_count(); ++v) {
        dom.lower[v] = m.lower(v);
        dom.upper[v] = m.upper(v);
    }
    auto watch = build_watch(m);
    std::vector<int> all(m.constraints().size());
    std::iota(all.begin(), all.end(), 0);
    if (!fixpoint(m, dom, watch, std::move(all))) return std::nullopt;
    return dom;
}

bool satisfies(const Model& m, const Solution& s)
{
    if (m.has_falsum()) return false;
    if (static_cast<int>(s.size()) != m.var_count()) return false;
    for (int v = 0; v < m.var_count(); ++v)
        if (s[v] < m.lower(v) || s[v] > m.upper(v)) return false;
    for (const auto& c : m.constraints()) {
        i128 sum = 0;
        for (const auto& [v, a] : c.terms) sum += i128(a) * s[v];
        bool ok = c.rel == Rel::le ? sum <= c.rhs : c.rel == Rel::ge ? sum >= c.rhs : sum == c.rhs;
        if (!ok) return false;
    }
    return true;
}

SolutionStream::SolutionStream(const Model& m, std::vector<int> order)
    : model_(m), order_(std::move(order)), watch_(build_watch(m))
{
    if (order_.empty()) {
        order_.resize(m.var_count());
        std::iota(order_.begin(), order_.end(), 0);
    } else {
        std::vector<bool> seen(m.var_count(), false);
        if (static_cast<int>(order_.size()) != m.var_count())
            throw std::invalid_argument("search order must cover all variables");
        for (int v : order_) {
            if (v < 0 || v >= m.var_count() || seen[v])
                throw std::invalid_argument("search order must be a permutation");
            seen[v] = true;
        }
    }
}

bool SolutionStream::propagate_local(int touched_var)
{
    return fixpoint(model_, dom_, watch_, watch_[touched_var]);
}

// Backtrack to the deepest frame with an untried value, apply it, and
// re-propagate. Returns false once the whole tree is exhausted.
bool SolutionStream::backtrack_and_advance()
{
    while (!stack_.empty()) {
        Frame& f = stack_.back();
        dom_ = f.saved;
        for (++f.value; f.value <= dom_.upper[f.var]; ++f.value) {
            if (f.value < dom_.lower[f.var]) continue;
            dom_.lower[f.var] = dom_.upper[f.var] = f.value;
            if (propagate_local(f.var)) return true;
            dom_ = f.saved;
        }
        stack_.pop_back();
    }
    return false;
}

// From a consistent state, branch on variables until all are fixed.
bool SolutionStream::descend()
{
    while (true) {
        int branch = -1;
        for (int v : order_)
            if (dom_.lower[v] < dom_.upper[v]) {
                branch = v;
                break;
            }
        if (branch == -1) return true;
        stack_.push_back(Frame{branch, dom_.lower[branch], dom_});
        dom_.upper[branch] = dom_.lower[branch];
        if (!propagate_local(branch) && !backtrack_and_advance()) return false;
    }
}

bool SolutionStream::next(Solution& out)
{
    if (done_) return false;
    if (!started_) {
        started_ = true;
        auto root = propagate(model_);
        if (!root) {
            done_ = true;
            return false;
        }
        dom_ = std::move(*root);
        if (!descend()) {
            done_ = true;
            return false;
        }
    } else {
        if (!backtrack_and_advance() || !descend()) {
            done_ = true;
            return false;
        }
    }
    out = dom_.lower;
    assert(satisfies(model_, out));
    return true;
}

std::vector<Solution> solve_all(const Model& m)
{
    std::vector<Solution> out;
    SolutionStream stream(m);
    Solution s;
    while (stream.next(s)) out.push_back(s);
    return out;
}

} // namespace bigraph::csp
