#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>

#include "worldbench/errors.hpp"
#include "worldbench/life_tree.hpp"
#include "worldbench/worlds_lib.hpp"

namespace wb {

namespace {

struct Edge {
    State to;
    int weight;  // value of the successor's view letter
};

struct Graph {
    std::vector<std::vector<Edge>> adj;
};

Graph build_value_graph(const WorldDef& world, const MeaningOfLife& meaning) {
    Graph g;
    g.adj.resize(world.state_count());
    for (State s = 0; s < world.state_count(); ++s) {
        for (Symbol a = 0; a < world.omega().size(); ++a) {
            State t = world.deterministic_step(s, a);
            g.adj[s].push_back({t, meaning.value_of(world.view(t))});
        }
    }
    return g;
}

// Iterative Tarjan. SCCs come out in completion order, i.e. every edge out
// of an SCC targets an earlier-emitted SCC.
std::vector<std::vector<State>> tarjan_sccs(const Graph& g, std::vector<State>& scc_of) {
    const State n = static_cast<State>(g.adj.size());
    std::vector<std::vector<State>> sccs;
    scc_of.assign(n, 0);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<State> stack;
    int next_index = 0;

    struct Frame {
        State v;
        std::size_t edge = 0;
    };
    for (State root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge < g.adj[f.v].size()) {
                State w = g.adj[f.v][f.edge++].to;
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<State> scc;
                    State w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        scc_of[w] = static_cast<State>(sccs.size());
                        scc.push_back(w);
                    } while (w != f.v);
                    sccs.push_back(std::move(scc));
                }
                State v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    return sccs;
}

// Karp's dynamic program over walk lengths 0..n from an arbitrary source of
// a strongly connected subgraph. Returns the maximum cycle mean, or nullopt
// when the component has no cycle (a single vertex without a self-loop).
std::optional<Rat> max_cycle_mean(const Graph& g, const std::vector<State>& scc,
                                  const std::vector<State>& scc_of) {
    const std::size_t n = scc.size();
    if (n == 1) {
        std::optional<int> best;
        for (const Edge& e : g.adj[scc[0]]) {
            if (e.to == scc[0] && (!best || e.weight > *best)) best = e.weight;
        }
        if (!best) return std::nullopt;
        return Rat(*best, 1);
    }
    std::map<State, std::size_t> local;
    for (std::size_t i = 0; i < n; ++i) local.emplace(scc[i], i);
    constexpr long long kNegInf = std::numeric_limits<long long>::min() / 4;
    std::vector<std::vector<long long>> dist(n + 1, std::vector<long long>(n, kNegInf));
    dist[0][0] = 0;  // scc[0] is the source
    const State my_scc = scc_of[scc[0]];
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t u = 0; u < n; ++u) {
            if (dist[k - 1][u] == kNegInf) continue;
            for (const Edge& e : g.adj[scc[u]]) {
                if (scc_of[e.to] != my_scc) continue;
                std::size_t v = local.at(e.to);
                dist[k][v] = std::max(dist[k][v], dist[k - 1][u] + e.weight);
            }
        }
    }
    std::optional<Rat> best;
    for (std::size_t v = 0; v < n; ++v) {
        if (dist[n][v] == kNegInf) continue;
        std::optional<Rat> worst;
        for (std::size_t k = 0; k < n; ++k) {
            if (dist[k][v] == kNegInf) continue;
            Rat mean(dist[n][v] - dist[k][v], static_cast<long long>(n - k));
            if (!worst || mean < *worst) worst = mean;
        }
        if (worst && (!best || *worst > *best)) best = worst;
    }
    return best;
}

}  // namespace

GoodWorldReport analyze_good_world(const WorldDef& world, const MeaningOfLife& meaning) {
    if (!world.deterministic()) {
        throw UnsupportedAnalysisError("good-world analysis requires a deterministic world");
    }
    Graph g = build_value_graph(world, meaning);
    std::vector<State> scc_of;
    auto sccs = tarjan_sccs(g, scc_of);

    // Completion order means successors are rated before their predecessors:
    // rate(C) = max(own cycle mean, rates of successor components).
    std::vector<Rat> scc_rate(sccs.size());
    for (std::size_t c = 0; c < sccs.size(); ++c) {
        std::optional<Rat> rate = max_cycle_mean(g, sccs[c], scc_of);
        for (State u : sccs[c]) {
            for (const Edge& e : g.adj[u]) {
                if (scc_of[e.to] == State(c)) continue;
                const Rat& succ = scc_rate[scc_of[e.to]];
                if (!rate || succ > *rate) rate = succ;
            }
        }
        scc_rate[c] = *rate;  // totality guarantees some reachable cycle
    }

    GoodWorldReport report;
    report.rates.resize(world.state_count());
    for (State s = 0; s < world.state_count(); ++s) report.rates[s] = scc_rate[scc_of[s]];

    Rat start_rate = report.rates[world.start()];
    std::vector<char> reachable(world.state_count(), 0);
    std::deque<State> frontier{world.start()};
    reachable[world.start()] = 1;
    while (!frontier.empty()) {
        State s = frontier.front();
        frontier.pop_front();
        for (const Edge& e : g.adj[s]) {
            if (!reachable[e.to]) {
                reachable[e.to] = 1;
                frontier.push_back(e.to);
            }
        }
    }
    for (State s = 0; s < world.state_count(); ++s) {
        if (report.rates[s] < start_rate) {
            report.fatal_states.push_back(s);
            if (reachable[s]) report.reachable_fatal.push_back(s);
        }
    }
    report.good = report.reachable_fatal.empty();
    return report;
}

WorldDef minimize_world(const WorldDef& world) {
    if (!world.deterministic()) {
        throw UnsupportedAnalysisError("minimization requires a deterministic world");
    }
    const State n = world.state_count();
    const std::size_t k = world.omega().size();
    // Moore refinement: start from the view partition, split on successor
    // classes until stable. For deterministic total machines the result is
    // exactly unbounded-depth indistinguishability.
    std::vector<State> cls(n);
    for (State s = 0; s < n; ++s) cls[s] = world.view(s);
    for (;;) {
        std::map<std::vector<State>, State> sig_index;
        std::vector<State> next_cls(n);
        for (State s = 0; s < n; ++s) {
            std::vector<State> sig{cls[s]};
            for (Symbol a = 0; a < k; ++a) sig.push_back(cls[world.deterministic_step(s, a)]);
            auto [it, _] = sig_index.try_emplace(sig, State(sig_index.size()));
            next_cls[s] = it->second;
        }
        if (next_cls == cls) break;
        cls = std::move(next_cls);
    }
    // Renumber classes by first occurrence so the quotient is canonical.
    std::vector<State> order(n, State(-1));
    std::vector<State> reps;
    for (State s = 0; s < n; ++s) {
        if (order[cls[s]] == State(-1)) {
            order[cls[s]] = State(reps.size());
            reps.push_back(s);
        }
    }
    std::vector<std::string> names;
    std::vector<Symbol> views;
    std::vector<std::vector<Branch>> cells;
    for (State rep : reps) {
        names.push_back(world.state_name(rep));
        views.push_back(world.view(rep));
        for (Symbol a = 0; a < k; ++a) {
            cells.push_back({Branch{order[cls[world.deterministic_step(rep, a)]], 1, 1}});
        }
    }
    return WorldDef(world.sigma(), world.omega(), std::move(names), std::move(views),
                    std::move(cells), order[cls[world.start()]]);
}

ComplexityProxy complexity_proxy(const WorldDef& world) {
    WorldDef minimized = minimize_world(world);
    return ComplexityProxy{world.state_count(), minimized.state_count()};
}

}  // namespace wb
