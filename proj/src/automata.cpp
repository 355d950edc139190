// SPDX-License-Identifier: Apache-2.0
#include "dw/automata.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <stdexcept>

namespace dw {

Alphabet::Alphabet(std::vector<std::string> names) {
    for (auto& n : names) {
        if (index_.count(n))
            throw std::invalid_argument("duplicate symbol name: " + n);
        add(n);
    }
}

Symbol Alphabet::add(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end())
        return it->second;
    auto id = static_cast<Symbol>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Symbol Alphabet::at(std::string_view name) const {
    auto s = find(name);
    if (!s)
        throw std::out_of_range("unknown symbol: " + std::string(name));
    return *s;
}

AlphabetPtr make_alphabet(std::vector<std::string> names) {
    return std::make_shared<const Alphabet>(std::move(names));
}

TransitionSystem::TransitionSystem(AlphabetPtr alphabet, std::size_t state_count, std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)), state_count_(state_count), transitions_(std::move(transitions)) {
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
    out_.assign(state_count_, {});
    for (std::uint32_t i = 0; i < transitions_.size(); ++i) {
        const auto& t = transitions_[i];
        if (t.from >= state_count_ || t.to >= state_count_)
            throw std::out_of_range("transition state out of range");
        if (t.symbol >= symbol_count())
            throw std::out_of_range("transition symbol out of range");
        out_[t.from].push_back(i);
    }
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Bfs {
    std::vector<std::uint32_t> dist;
    std::vector<std::uint32_t> via; // transition index used to enter the state
};

// BFS restricted to `allowed` (empty = everything); stops early once `stop` holds for a visited state.
template <typename Stop>
std::optional<State> bfs(const TransitionSystem& ts, const std::vector<State>& sources,
                         const std::vector<bool>& allowed, Stop stop, Bfs& out) {
    out.dist.assign(ts.state_count(), kNone);
    out.via.assign(ts.state_count(), kNone);
    std::deque<State> queue;
    for (State s : sources) {
        if (out.dist[s] == kNone) {
            out.dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        State p = queue.front();
        queue.pop_front();
        if (stop(p))
            return p;
        for (auto ti : ts.out(p)) {
            const auto& t = ts.transitions()[ti];
            if (!allowed.empty() && !allowed[t.to])
                continue;
            if (out.dist[t.to] != kNone)
                continue;
            out.dist[t.to] = out.dist[p] + 1;
            out.via[t.to] = ti;
            queue.push_back(t.to);
        }
    }
    return std::nullopt;
}

// Transition indices along the BFS tree path ending at `target`.
std::vector<std::uint32_t> path_to(const TransitionSystem& ts, const Bfs& b, State target) {
    std::vector<std::uint32_t> path;
    State cur = target;
    while (b.via[cur] != kNone && b.dist[cur] > 0) {
        path.push_back(b.via[cur]);
        cur = ts.transitions()[b.via[cur]].from;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

// Shortest nonempty path from `from` to `to` inside `allowed`.
std::vector<std::uint32_t> nonempty_path(const TransitionSystem& ts, State from, State to,
                                         const std::vector<bool>& allowed) {
    Bfs b;
    // Seed with successors of `from` so that from == to still yields a real cycle.
    b.dist.assign(ts.state_count(), kNone);
    b.via.assign(ts.state_count(), kNone);
    std::deque<State> queue;
    for (auto ti : ts.out(from)) {
        const auto& t = ts.transitions()[ti];
        if (!allowed[t.to] || b.dist[t.to] != kNone)
            continue;
        b.dist[t.to] = 1;
        b.via[t.to] = ti;
        queue.push_back(t.to);
    }
    while (!queue.empty()) {
        State p = queue.front();
        queue.pop_front();
        if (p == to)
            break;
        for (auto ti : ts.out(p)) {
            const auto& t = ts.transitions()[ti];
            if (!allowed[t.to] || b.dist[t.to] != kNone)
                continue;
            b.dist[t.to] = b.dist[p] + 1;
            b.via[t.to] = ti;
            queue.push_back(t.to);
        }
    }
    assert(b.dist[to] != kNone);
    std::vector<std::uint32_t> path;
    State cur = to;
    for (;;) {
        auto ti = b.via[cur];
        path.push_back(ti);
        if (b.dist[cur] == 1)
            break;
        cur = ts.transitions()[ti].from;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

std::vector<std::uint32_t> scc_ids(const TransitionSystem& ts, std::uint32_t* count) {
    const std::size_t n = ts.state_count();
    std::vector<std::uint32_t> index(n, kNone), low(n, 0), comp(n, kNone);
    std::vector<bool> on_stack(n, false);
    std::vector<State> stack;
    std::uint32_t next_index = 0, next_comp = 0;
    struct Frame {
        State v;
        std::size_t edge;
    };
    std::vector<Frame> call;
    for (State root = 0; root < n; ++root) {
        if (index[root] != kNone)
            continue;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& f = call.back();
            const auto& outs = ts.out(f.v);
            if (f.edge < outs.size()) {
                State w = ts.transitions()[outs[f.edge++]].to;
                if (index[w] == kNone) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            State v = f.v;
            call.pop_back();
            if (!call.empty())
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                State w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                } while (w != v);
                ++next_comp;
            }
        }
    }
    if (count)
        *count = next_comp;
    return comp;
}

std::vector<bool> reachable_from(const TransitionSystem& ts, State q) {
    std::vector<bool> seen(ts.state_count(), false);
    std::vector<State> work{q};
    seen[q] = true;
    while (!work.empty()) {
        State p = work.back();
        work.pop_back();
        for (auto ti : ts.out(p)) {
            State r = ts.transitions()[ti].to;
            if (!seen[r]) {
                seen[r] = true;
                work.push_back(r);
            }
        }
    }
    return seen;
}

std::vector<bool> coreachable_to(const TransitionSystem& ts, const std::vector<bool>& targets) {
    std::vector<std::vector<State>> preds(ts.state_count());
    for (const auto& t : ts.transitions())
        preds[t.to].push_back(t.from);
    std::vector<bool> seen(targets);
    std::vector<State> work;
    for (State q = 0; q < ts.state_count(); ++q)
        if (seen[q])
            work.push_back(q);
    while (!work.empty()) {
        State p = work.back();
        work.pop_back();
        for (State r : preds[p]) {
            if (!seen[r]) {
                seen[r] = true;
                work.push_back(r);
            }
        }
    }
    return seen;
}

std::optional<Lasso> generalized_nonempty(const GeneralizedBuchi& g) {
    const auto& ts = g.ts;
    const std::size_t n = ts.state_count();
    if (n == 0)
        return std::nullopt;
    Bfs from_init;
    bfs(ts, {g.initial}, {}, [](State) { return false; }, from_init);

    std::uint32_t ncomp = 0;
    auto comp = scc_ids(ts, &ncomp);
    std::vector<bool> nontrivial(ncomp, false);
    for (const auto& t : ts.transitions())
        if (comp[t.from] == comp[t.to])
            nontrivial[comp[t.from]] = true;
    std::vector<std::vector<bool>> hits(ncomp, std::vector<bool>(g.sets.size(), false));
    for (State q = 0; q < n; ++q)
        for (std::size_t i = 0; i < g.sets.size(); ++i)
            if (g.sets[i][q])
                hits[comp[q]][i] = true;

    State entry = kNone;
    for (State q = 0; q < n; ++q) {
        if (from_init.dist[q] == kNone || !nontrivial[comp[q]])
            continue;
        const auto& h = hits[comp[q]];
        if (!std::all_of(h.begin(), h.end(), [](bool b) { return b; }))
            continue;
        if (entry == kNone || from_init.dist[q] < from_init.dist[entry])
            entry = q;
    }
    if (entry == kNone)
        return std::nullopt;

    std::vector<bool> inside(n, false);
    for (State q = 0; q < n; ++q)
        inside[q] = comp[q] == comp[entry];

    Lasso l;
    for (auto ti : path_to(ts, from_init, entry)) {
        l.prefixStates.push_back(ts.transitions()[ti].from);
        l.prefixWord.push_back(ts.transitions()[ti].symbol);
    }

    std::vector<std::uint32_t> cycle;
    State cur = entry;
    for (const auto& set : g.sets) {
        if (set[cur])
            continue;
        Bfs b;
        auto hit = bfs(ts, {cur}, inside, [&](State q) { return set[q]; }, b);
        assert(hit);
        auto seg = path_to(ts, b, *hit);
        cycle.insert(cycle.end(), seg.begin(), seg.end());
        cur = *hit;
    }
    if (cur != entry || cycle.empty()) {
        std::vector<std::uint32_t> back;
        if (cur == entry) {
            back = nonempty_path(ts, cur, entry, inside);
        } else {
            Bfs b;
            bfs(ts, {cur}, inside, [&](State q) { return q == entry; }, b);
            back = path_to(ts, b, entry);
        }
        cycle.insert(cycle.end(), back.begin(), back.end());
    }
    for (auto ti : cycle) {
        l.cycleStates.push_back(ts.transitions()[ti].from);
        l.cycleWord.push_back(ts.transitions()[ti].symbol);
    }
    return l;
}

std::optional<Lasso> buchi_nonempty(const BuchiAutomaton& a) {
    GeneralizedBuchi g{a.ts, a.initial, {a.final}};
    return generalized_nonempty(g);
}

BuchiAutomaton buchi_intersect(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    if (!(*a.ts.alphabet() == *b.ts.alphabet()))
        throw std::invalid_argument("buchi_intersect: alphabet mismatch");
    const std::size_t nb = b.ts.state_count();
    auto key = [&](State p, State q, int phase) -> std::uint64_t {
        return (static_cast<std::uint64_t>(p) * nb + q) * 2 + static_cast<std::uint64_t>(phase);
    };
    std::unordered_map<std::uint64_t, State> ids;
    std::vector<std::tuple<State, State, int>> states;
    std::vector<Transition> trans;
    auto intern = [&](State p, State q, int phase) {
        auto k = key(p, q, phase);
        auto it = ids.find(k);
        if (it != ids.end())
            return it->second;
        auto id = static_cast<State>(states.size());
        ids.emplace(k, id);
        states.emplace_back(p, q, phase);
        return id;
    };
    intern(a.initial, b.initial, 0);
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [p, q, phase] = states[i];
        int next_phase = phase;
        if (phase == 0 && a.final[p])
            next_phase = 1;
        else if (phase == 1 && b.final[q])
            next_phase = 0;
        const auto& oa = a.ts.out(p);
        const auto& ob = b.ts.out(q);
        for (auto ta : oa) {
            const auto& x = a.ts.transitions()[ta];
            for (auto tb : ob) {
                const auto& y = b.ts.transitions()[tb];
                if (y.symbol != x.symbol)
                    continue;
                State to = intern(x.to, y.to, next_phase);
                trans.push_back({static_cast<State>(i), x.symbol, to});
            }
        }
    }
    BuchiAutomaton r;
    r.ts = TransitionSystem(a.ts.alphabet(), states.size(), std::move(trans));
    r.initial = 0;
    r.final.assign(states.size(), false);
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [p, q, phase] = states[i];
        r.final[i] = phase == 1 && b.final[q];
    }
    return r;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<State>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (State s : v) {
            h ^= s + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

} // namespace

GeneralizedBuchi intersect_all(const std::vector<const BuchiAutomaton*>& parts) {
    if (parts.empty())
        throw std::invalid_argument("intersect_all: no automata");
    const auto& alpha = parts.front()->ts.alphabet();
    for (auto* p : parts)
        if (!(*p->ts.alphabet() == *alpha))
            throw std::invalid_argument("intersect_all: alphabet mismatch");

    std::unordered_map<std::vector<State>, State, VecHash> ids;
    std::vector<std::vector<State>> states;
    std::vector<Transition> trans;
    auto intern = [&](const std::vector<State>& t) {
        auto it = ids.find(t);
        if (it != ids.end())
            return it->second;
        auto id = static_cast<State>(states.size());
        ids.emplace(t, id);
        states.push_back(t);
        return id;
    };
    std::vector<State> init;
    for (auto* p : parts)
        init.push_back(p->initial);
    intern(init);

    const std::size_t k = parts.size();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto cur = states[i];
        const auto& first_out = parts[0]->ts.out(cur[0]);
        std::size_t pos = 0;
        while (pos < first_out.size()) {
            Symbol sym = parts[0]->ts.transitions()[first_out[pos]].symbol;
            // successor lists per component for this symbol
            std::vector<std::vector<State>> succ(k);
            for (; pos < first_out.size() && parts[0]->ts.transitions()[first_out[pos]].symbol == sym; ++pos)
                succ[0].push_back(parts[0]->ts.transitions()[first_out[pos]].to);
            bool dead = false;
            for (std::size_t c = 1; c < k && !dead; ++c) {
                const auto& ts = parts[c]->ts;
                const auto& outs = ts.out(cur[c]);
                auto lo = std::lower_bound(outs.begin(), outs.end(), sym, [&](std::uint32_t ti, Symbol s) {
                    return ts.transitions()[ti].symbol < s;
                });
                for (; lo != outs.end() && ts.transitions()[*lo].symbol == sym; ++lo)
                    succ[c].push_back(ts.transitions()[*lo].to);
                dead = succ[c].empty();
            }
            if (dead)
                continue;
            std::vector<std::size_t> odo(k, 0);
            std::vector<State> tuple(k);
            for (;;) {
                for (std::size_t c = 0; c < k; ++c)
                    tuple[c] = succ[c][odo[c]];
                State to = intern(tuple);
                trans.push_back({static_cast<State>(i), sym, to});
                bool done = true;
                for (std::size_t c = k; c-- > 0;) {
                    if (++odo[c] < succ[c].size()) {
                        done = false;
                        break;
                    }
                    odo[c] = 0;
                }
                if (done)
                    break;
            }
        }
    }
    GeneralizedBuchi g;
    g.ts = TransitionSystem(alpha, states.size(), std::move(trans));
    g.initial = 0;
    g.sets.assign(k, std::vector<bool>(states.size(), false));
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t c = 0; c < k; ++c)
            g.sets[c][i] = parts[c]->final[states[i][c]];
    return g;
}

BuchiAutomaton degeneralize(const GeneralizedBuchi& g) {
    const std::size_t n = g.ts.state_count();
    const std::size_t k = g.sets.size();
    BuchiAutomaton r;
    if (k <= 1) {
        r.ts = g.ts;
        r.initial = g.initial;
        r.final = k == 0 ? std::vector<bool>(n, true) : g.sets[0];
        return r;
    }
    std::vector<Transition> trans;
    trans.reserve(g.ts.transitions().size() * k);
    for (const auto& t : g.ts.transitions()) {
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = g.sets[i][t.from] ? (i + 1) % k : i;
            trans.push_back({static_cast<State>(t.from * k + i), t.symbol, static_cast<State>(t.to * k + j)});
        }
    }
    r.ts = TransitionSystem(g.ts.alphabet(), n * k, std::move(trans));
    r.initial = static_cast<State>(g.initial * k);
    r.final.assign(n * k, false);
    for (State q = 0; q < n; ++q)
        r.final[q * k + (k - 1)] = g.sets[k - 1][q];
    return trim_reachable(r);
}

BuchiAutomaton monitor_inf_often(const AlphabetPtr& alphabet, const std::vector<Symbol>& required) {
    std::vector<Symbol> req(required);
    std::sort(req.begin(), req.end());
    req.erase(std::unique(req.begin(), req.end()), req.end());
    if (req.empty())
        return universal_automaton(alphabet);
    // state i < k waits for req[i]; state k marks a completed round and behaves like state 0
    const std::size_t k = req.size();
    std::vector<Transition> trans;
    for (State s = 0; s <= k; ++s) {
        std::size_t waiting = s == k ? 0 : s;
        for (Symbol a = 0; a < alphabet->size(); ++a) {
            State to;
            if (a == req[waiting])
                to = static_cast<State>(waiting + 1);
            else
                to = static_cast<State>(waiting);
            trans.push_back({s, a, to});
        }
    }
    BuchiAutomaton m;
    m.ts = TransitionSystem(alphabet, k + 1, std::move(trans));
    m.initial = 0;
    m.final.assign(k + 1, false);
    m.final[k] = true;
    return m;
}

BuchiAutomaton monitor_avoid(const AlphabetPtr& alphabet, const std::vector<Symbol>& banned) {
    std::vector<bool> ban(alphabet->size(), false);
    for (Symbol b : banned)
        ban.at(b) = true;
    std::vector<Transition> trans;
    for (Symbol a = 0; a < alphabet->size(); ++a)
        if (!ban[a])
            trans.push_back({0, a, 0});
    BuchiAutomaton m;
    m.ts = TransitionSystem(alphabet, 1, std::move(trans));
    m.initial = 0;
    m.final = {true};
    return m;
}

BuchiAutomaton universal_automaton(const AlphabetPtr& alphabet) { return monitor_avoid(alphabet, {}); }

bool nfa_run_exists(const Nfa& n, const std::vector<Symbol>& word) {
    std::vector<bool> cur(n.ts.state_count(), false), next;
    cur[n.initial] = true;
    for (Symbol a : word) {
        next.assign(n.ts.state_count(), false);
        bool any = false;
        for (State q = 0; q < n.ts.state_count(); ++q) {
            if (!cur[q])
                continue;
            for (auto ti : n.ts.out(q)) {
                const auto& t = n.ts.transitions()[ti];
                if (t.symbol == a) {
                    next[t.to] = true;
                    any = true;
                }
            }
        }
        if (!any)
            return false;
        cur.swap(next);
    }
    for (State q = 0; q < n.ts.state_count(); ++q)
        if (cur[q] && n.finals[q])
            return true;
    return false;
}

bool accepts_lasso(const BuchiAutomaton& a, const std::vector<Symbol>& prefix, const std::vector<Symbol>& cycle) {
    if (cycle.empty())
        throw std::invalid_argument("accepts_lasso: empty cycle");
    // Product of the automaton with the positions of the lasso word.
    const std::size_t len = prefix.size() + cycle.size();
    auto letter = [&](std::size_t i) { return i < prefix.size() ? prefix[i] : cycle[i - prefix.size()]; };
    auto succ = [&](std::size_t i) { return i + 1 < len ? i + 1 : prefix.size(); };
    const std::size_t n = a.ts.state_count();
    auto single = make_alphabet({"#"});
    std::vector<Transition> trans;
    for (State q = 0; q < n; ++q) {
        for (std::size_t i = 0; i < len; ++i) {
            for (auto ti : a.ts.out(q)) {
                const auto& t = a.ts.transitions()[ti];
                if (t.symbol == letter(i))
                    trans.push_back({static_cast<State>(q * len + i), 0, static_cast<State>(t.to * len + succ(i))});
            }
        }
    }
    BuchiAutomaton p;
    p.ts = TransitionSystem(single, n * len, std::move(trans));
    p.initial = static_cast<State>(a.initial * len);
    p.final.assign(n * len, false);
    for (State q = 0; q < n; ++q)
        for (std::size_t i = 0; i < len; ++i)
            p.final[q * len + i] = a.final[q];
    return buchi_nonempty(p).has_value();
}

bool lasso_replays(const BuchiAutomaton& a, const Lasso& l) {
    if (l.cycleWord.empty() || l.cycleStates.size() != l.cycleWord.size() ||
        l.prefixStates.size() != l.prefixWord.size())
        return false;
    auto has = [&](State p, Symbol s, State q) {
        for (auto ti : a.ts.out(p)) {
            const auto& t = a.ts.transitions()[ti];
            if (t.symbol == s && t.to == q)
                return true;
        }
        return false;
    };
    State start = l.prefixStates.empty() ? l.cycleStates.front() : l.prefixStates.front();
    if (start != a.initial)
        return false;
    for (std::size_t i = 0; i < l.prefixWord.size(); ++i) {
        State next = i + 1 < l.prefixStates.size() ? l.prefixStates[i + 1] : l.cycleStates.front();
        if (!has(l.prefixStates[i], l.prefixWord[i], next))
            return false;
    }
    bool seen_final = false;
    for (std::size_t i = 0; i < l.cycleWord.size(); ++i) {
        State next = l.cycleStates[(i + 1) % l.cycleStates.size()];
        if (!has(l.cycleStates[i], l.cycleWord[i], next))
            return false;
        seen_final = seen_final || a.final[l.cycleStates[i]];
    }
    return seen_final;
}

BuchiAutomaton rooted_at(const BuchiAutomaton& a, State q) {
    BuchiAutomaton r = a;
    r.initial = q;
    return r;
}

BuchiAutomaton trim_reachable(const BuchiAutomaton& a) {
    const std::size_t n = a.ts.state_count();
    std::vector<State> order;
    std::vector<State> id(n, kNone);
    std::deque<State> queue{a.initial};
    id[a.initial] = 0;
    order.push_back(a.initial);
    while (!queue.empty()) {
        State p = queue.front();
        queue.pop_front();
        for (auto ti : a.ts.out(p)) {
            State r = a.ts.transitions()[ti].to;
            if (id[r] == kNone) {
                id[r] = static_cast<State>(order.size());
                order.push_back(r);
                queue.push_back(r);
            }
        }
    }
    std::vector<Transition> trans;
    for (const auto& t : a.ts.transitions())
        if (id[t.from] != kNone)
            trans.push_back({id[t.from], t.symbol, id[t.to]});
    BuchiAutomaton r;
    r.ts = TransitionSystem(a.ts.alphabet(), order.size(), std::move(trans));
    r.initial = 0;
    r.final.assign(order.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i)
        r.final[i] = a.final[order[i]];
    return r;
}

LetterUse letter_use(const BuchiAutomaton& a) {
    const auto& ts = a.ts;
    LetterUse use;
    use.occurs.assign(ts.symbol_count(), false);
    use.recurs.assign(ts.symbol_count(), false);
    if (ts.state_count() == 0)
        return use;
    auto reach = reachable_from(ts, a.initial);
    std::uint32_t ncomp = 0;
    auto comp = scc_ids(ts, &ncomp);
    std::vector<bool> nontrivial(ncomp, false), has_final(ncomp, false);
    for (const auto& t : ts.transitions())
        if (comp[t.from] == comp[t.to])
            nontrivial[comp[t.from]] = true;
    for (State q = 0; q < ts.state_count(); ++q)
        if (a.final[q])
            has_final[comp[q]] = true;
    std::vector<bool> good(ts.state_count(), false);
    for (State q = 0; q < ts.state_count(); ++q)
        good[q] = nontrivial[comp[q]] && has_final[comp[q]];
    auto live = coreachable_to(ts, good);
    for (const auto& t : ts.transitions()) {
        if (!reach[t.from] || !live[t.to])
            continue;
        use.occurs[t.symbol] = true;
        if (comp[t.from] == comp[t.to] && good[t.from])
            use.recurs[t.symbol] = true;
    }
    return use;
}

} // namespace dw
