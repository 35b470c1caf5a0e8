#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <vector>

#include "walshtf/errors.hpp"
#include "walshtf/exact_scalar.hpp"

namespace walshtf {

/*
 * Maximum-weight antichain in a finite poset with exact nonnegative weights.
 *
 * Primary route: branch and bound over the comparability structure with a
 * greedy initial antichain and a chain-partition upper bound.  Large inputs,
 * or searches that blow through the node budget, fall back to a min-flow
 * computation on the split-node network: every element v becomes an arc
 * v- -> v+ with lower bound w_v, u+ -> v- is wired for every u < v, and the
 * minimum total s->t flow meeting the lower bounds equals the maximum
 * antichain weight (each s->t path follows a chain and meets an antichain
 * at most once).  The flow is minimized by augmenting from t back to s in
 * the residual graph of the trivial feasible flow.
 */

enum class AntichainMethod { automatic, branch_bound, min_flow };

struct AntichainResult {
    ExactScalar weight;
    std::vector<std::size_t> members;  // indices into the caller's element list
    bool used_flow = false;
    long nodes = 0;  // branch-and-bound nodes visited
};

namespace antichain_detail {

class Bitset {
  public:
    explicit Bitset(std::size_t n) : bits_((n + 63) / 64, 0), n_(n) {}

    void set(std::size_t i) { bits_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { bits_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(std::size_t i) const {
        return (bits_[i >> 6] >> (i & 63)) & 1;
    }
    void remove(const Bitset& other) {
        for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] &= ~other.bits_[w];
    }
    bool any() const {
        for (auto w : bits_)
            if (w) return true;
        return false;
    }
    std::size_t size() const { return n_; }

  private:
    std::vector<std::uint64_t> bits_;
    std::size_t n_;
};

struct Search {
    std::size_t n;
    const std::vector<ExactScalar>& w;
    std::vector<Bitset> comp;            // comp[i]: elements comparable to i
    std::vector<std::vector<std::size_t>> chains;  // chain partition, each
                                                   // sorted by weight desc
    std::vector<std::size_t> by_weight;  // all elements, weight descending
    ExactScalar best;
    std::vector<std::size_t> best_set;
    std::vector<std::size_t> chosen;
    long nodes = 0;
    long budget = 0;
    bool aborted = false;

    Search(std::size_t n_, const std::vector<ExactScalar>& w_) : n(n_), w(w_) {}

    ExactScalar upper_bound(const Bitset& avail) const {
        ExactScalar ub;
        for (const auto& chain : chains)
            for (std::size_t i : chain)
                if (avail.test(i)) {
                    ub += w[i];  // first hit is the chain maximum
                    break;
                }
        return ub;
    }

    void dfs(Bitset avail, const ExactScalar& current) {
        if (aborted) return;
        if (++nodes > budget) {
            aborted = true;
            return;
        }
        if (best < current) {
            best = current;
            best_set = chosen;
        }
        if (!avail.any()) return;
        ExactScalar ub = current + upper_bound(avail);
        if (!(best < ub)) return;
        // Deterministic pivot: heaviest available element, then lowest index.
        std::size_t pivot = n;
        for (std::size_t i : by_weight)
            if (avail.test(i)) {
                pivot = i;
                break;
            }
        Bitset with = avail;
        with.remove(comp[pivot]);
        with.reset(pivot);
        chosen.push_back(pivot);
        dfs(std::move(with), current + w[pivot]);
        chosen.pop_back();
        avail.reset(pivot);
        dfs(std::move(avail), current);
    }
};

// Dinic max-flow with exact capacities; the number of augmentations is
// bounded by the graph structure, not the capacity values, so exact
// arithmetic terminates.
struct FlowNetwork {
    struct Arc {
        std::size_t to;
        ExactScalar residual;
    };
    std::vector<Arc> arcs;                     // paired: arc i ^ 1 is the reverse
    std::vector<std::vector<std::size_t>> adj;
    std::vector<long> level;
    std::vector<std::size_t> iter;

    explicit FlowNetwork(std::size_t nodes) : adj(nodes) {}

    void add(std::size_t from, std::size_t to, ExactScalar cap,
             ExactScalar back_cap) {
        adj[from].push_back(arcs.size());
        arcs.push_back({to, std::move(cap)});
        adj[to].push_back(arcs.size());
        arcs.push_back({from, std::move(back_cap)});
    }

    bool bfs(std::size_t s, std::size_t t) {
        level.assign(adj.size(), -1);
        std::queue<std::size_t> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            for (std::size_t a : adj[v]) {
                const Arc& arc = arcs[a];
                if (level[arc.to] < 0 && arc.residual.sign() > 0) {
                    level[arc.to] = level[v] + 1;
                    q.push(arc.to);
                }
            }
        }
        return level[t] >= 0;
    }

    ExactScalar dfs(std::size_t v, std::size_t t, ExactScalar pushed) {
        if (v == t) return pushed;
        for (; iter[v] < adj[v].size(); ++iter[v]) {
            std::size_t a = adj[v][iter[v]];
            Arc& arc = arcs[a];
            if (arc.residual.sign() <= 0 || level[arc.to] != level[v] + 1)
                continue;
            ExactScalar flow = dfs(
                arc.to, t, arc.residual < pushed ? arc.residual : pushed);
            if (flow.sign() > 0) {
                arc.residual = arc.residual - flow;
                arcs[a ^ 1].residual += flow;
                return flow;
            }
        }
        return ExactScalar();
    }

    // `budget` must exceed every capacity so path pushes are cap-limited.
    ExactScalar max_flow(std::size_t s, std::size_t t, const ExactScalar& budget) {
        ExactScalar total;
        while (bfs(s, t)) {
            iter.assign(adj.size(), 0);
            while (true) {
                ExactScalar pushed = dfs(s, t, budget);
                if (pushed.sign() <= 0) break;
                total += pushed;
            }
        }
        return total;
    }
};

}  // namespace antichain_detail

inline AntichainResult max_weight_antichain(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less,
    const std::vector<ExactScalar>& weights,
    AntichainMethod method = AntichainMethod::automatic, long node_budget = 400000) {
    using namespace antichain_detail;
    if (weights.size() != n)
        throw PreconditionViolated("one weight per element required");
    for (const auto& w : weights)
        if (w.sign() < 0)
            throw PreconditionViolated("antichain weights must be nonnegative");

    // Work on the support: zero-weight elements never help.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (!weights[i].is_zero()) keep.push_back(i);
    std::size_t m = keep.size();
    AntichainResult out;
    if (m == 0) return out;

    std::vector<ExactScalar> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = weights[keep[i]];
    std::vector<std::vector<bool>> lt(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j) lt[i][j] = less(keep[i], keep[j]);

    bool use_flow = method == AntichainMethod::min_flow ||
                    (method == AntichainMethod::automatic && m > 2000);
    std::vector<std::size_t> picked;

    if (!use_flow) {
        Search search(m, w);
        search.budget = node_budget;
        search.comp.assign(m, Bitset(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (lt[i][j] || lt[j][i]) {
                    search.comp[i].set(j);
                    search.comp[j].set(i);
                }
        search.by_weight.resize(m);
        std::iota(search.by_weight.begin(), search.by_weight.end(), 0);
        std::sort(search.by_weight.begin(), search.by_weight.end(),
                  [&](std::size_t x, std::size_t y) {
                      if (w[x] == w[y]) return x < y;
                      return w[y] < w[x];
                  });
        // Chain partition by first fit along a linear extension, built with
        // Kahn's algorithm (lowest index first for determinism).
        std::vector<std::size_t> ext;
        ext.reserve(m);
        std::vector<std::size_t> indeg(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (lt[i][j]) ++indeg[j];
        std::vector<bool> done(m, false);
        while (ext.size() < m) {
            for (std::size_t i = 0; i < m; ++i)
                if (!done[i] && indeg[i] == 0) {
                    done[i] = true;
                    ext.push_back(i);
                    for (std::size_t j = 0; j < m; ++j)
                        if (lt[i][j]) --indeg[j];
                    break;
                }
        }
        std::vector<std::size_t> chain_tail;
        std::vector<std::size_t> chain_of(m);
        for (std::size_t v : ext) {
            bool placed = false;
            for (std::size_t c = 0; c < chain_tail.size() && !placed; ++c)
                if (lt[chain_tail[c]][v]) {
                    chain_of[v] = c;
                    chain_tail[c] = v;
                    placed = true;
                }
            if (!placed) {
                chain_of[v] = chain_tail.size();
                chain_tail.push_back(v);
            }
        }
        search.chains.assign(chain_tail.size(), {});
        for (std::size_t i : search.by_weight)
            search.chains[chain_of[i]].push_back(i);

        // Greedy start: heaviest-first independent set.
        Bitset all(m);
        for (std::size_t i = 0; i < m; ++i) all.set(i);
        for (std::size_t i : search.by_weight) {
            bool ok = true;
            for (std::size_t j : search.chosen)
                if (search.comp[i].test(j)) ok = false;
            if (ok) {
                search.chosen.push_back(i);
                search.best += w[i];
            }
        }
        search.best_set = search.chosen;
        search.chosen.clear();
        search.dfs(all, ExactScalar());
        out.nodes = search.nodes;
        if (!search.aborted) {
            out.weight = search.best;
            picked = search.best_set;
        } else if (method == AntichainMethod::branch_bound) {
            throw PreconditionViolated("antichain search exceeded its node budget");
        } else {
            use_flow = true;
        }
    }

    if (use_flow) {
        out.used_flow = true;
        ExactScalar total;
        for (const auto& x : w) total += x;
        ExactScalar inf = total + ExactScalar(1);
        std::size_t s = 2 * m, t = 2 * m + 1;
        FlowNetwork net(2 * m + 2);
        // Residual capacities already reflect the feasible flow that routes
        // w_v along s -> v- -> v+ -> t for every v.
        for (std::size_t v = 0; v < m; ++v) {
            net.add(s, 2 * v, inf - w[v], w[v]);
            net.add(2 * v, 2 * v + 1, inf - w[v], ExactScalar());
            net.add(2 * v + 1, t, inf - w[v], w[v]);
        }
        for (std::size_t u = 0; u < m; ++u)
            for (std::size_t v = 0; v < m; ++v)
                if (lt[u][v]) net.add(2 * u + 1, 2 * v, inf, ExactScalar());
        ExactScalar reduced = net.max_flow(t, s, inf);
        out.weight = total - reduced;
        // Elements whose exit node is residually reachable from t while the
        // entry node is not form a maximum antichain (every crossing arc is
        // pinned at its lower bound).
        std::vector<bool> reach(2 * m + 2, false);
        std::vector<std::size_t> stack{t};
        reach[t] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t a : net.adj[v])
                if (net.arcs[a].residual.sign() > 0 && !reach[net.arcs[a].to]) {
                    reach[net.arcs[a].to] = true;
                    stack.push_back(net.arcs[a].to);
                }
        }
        for (std::size_t v = 0; v < m; ++v)
            if (reach[2 * v + 1] && !reach[2 * v]) picked.push_back(v);
    }

    ExactScalar check;
    for (std::size_t i : picked) check += w[i];
    for (std::size_t x = 0; x < picked.size(); ++x)
        for (std::size_t y = x + 1; y < picked.size(); ++y)
            if (lt[picked[x]][picked[y]] || lt[picked[y]][picked[x]])
                throw PreconditionViolated("antichain witness is not an antichain");
    if (!(check == out.weight))
        throw PreconditionViolated("antichain witness does not attain the value");

    out.members.reserve(picked.size());
    for (std::size_t i : picked) out.members.push_back(keep[i]);
    std::sort(out.members.begin(), out.members.end());
    return out;
}

}  // namespace walshtf
