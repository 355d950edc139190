// SPDX-License-Identifier: Apache-2.0
#include "dw/adc.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <cstdlib>
#include <map>
#include <memory>
#include <exception>
#include <mutex>
#include <numeric>
#include <tuple>

#include <omp.h>

namespace dw {

const char* to_string(ClassTag t) {
    switch (t) {
    case ClassTag::Zero:
        return "zero";
    case ClassTag::Fin:
        return "fin";
    case ClassTag::Inf:
        return "inf";
    case ClassTag::FinSmall:
        return "fin-small";
    case ClassTag::FinBig:
        return "fin-big";
    }
    return "?";
}

ClassTag PartitionGuess::tag_of(Mask s) const {
    for (const auto& c : classes)
        if (c.set == s)
            return c.tag;
    return ClassTag::Zero;
}

std::size_t PartitionGuess::count(ClassTag t) const {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(), [&](const ClassGuess& c) { return c.tag == t; }));
}

namespace {

constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

bool is_z(ClassTag t) { return t == ClassTag::Fin || t == ClassTag::FinBig; }

Mask all_letters(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

Mask data_mask_of(const EngineConfig& cfg, std::size_t n) { return cfg.dataMask ? cfg.dataMask : all_letters(n); }

std::size_t epsilon_of(const EngineConfig& cfg, std::size_t n) {
    return cfg.mode == GuessMode::FourWay ? static_cast<std::size_t>(std::popcount(data_mask_of(cfg, n))) + 3 : 0;
}

std::vector<Symbol> members(Mask m) {
    std::vector<Symbol> out;
    for (Symbol s = 0; m >> s; ++s)
        if ((m >> s) & 1u)
            out.push_back(s);
    return out;
}

std::string set_name(Mask m, const Alphabet& alpha) {
    std::string s = "{";
    bool first = true;
    for (Symbol a : members(m)) {
        s += (first ? "" : ",") + alpha.name(a);
        first = false;
    }
    return s + "}";
}

// Letters that some class of kind z (Fin / FinBig) contains.
Mask z_letters(const PartitionGuess& p) {
    Mask m = 0;
    for (const auto& c : p.classes)
        if (is_z(c.tag))
            m |= c.set;
    return m;
}

Mask inf_letters(const PartitionGuess& p) {
    Mask m = 0;
    for (const auto& c : p.classes)
        if (c.tag == ClassTag::Inf)
            m |= c.set;
    return m;
}

DataValue constant_value(std::size_t class_index, std::size_t j, std::size_t eps) {
    return static_cast<DataValue>(class_index * eps + j);
}

} // namespace

Symbol WitnessRecipe::at(std::size_t i) const {
    if (i < u.size())
        return u[i];
    i -= u.size();
    if (i < vPrefix.size())
        return vPrefix[i];
    i -= vPrefix.size();
    return vCycle[i % vCycle.size()];
}

std::vector<Symbol> WitnessRecipe::projected_prefix() const {
    std::vector<Symbol> out;
    for (Symbol s : u)
        out.push_back(symbols[s].base);
    for (Symbol s : vPrefix)
        out.push_back(symbols[s].base);
    return out;
}

std::vector<Symbol> WitnessRecipe::projected_cycle() const {
    std::vector<Symbol> out;
    for (Symbol s : vCycle)
        out.push_back(symbols[s].base);
    return out;
}

ExtendedSystem build_extended_system(const BuchiAutomaton& a, const PartitionGuess& p, const EngineConfig& cfg) {
    const auto& alpha = *a.ts.alphabet();
    const std::size_t n = alpha.size();
    const Mask data = data_mask_of(cfg, n);
    const std::size_t eps = epsilon_of(cfg, n);
    ExtendedSystem ext;
    std::vector<std::string> names = alpha.names();
    for (Symbol s = 0; s < n; ++s)
        ext.symbols.push_back({ExtSymbol::Kind::Plain, s, 0, 0});
    for (const auto& c : p.classes) {
        if (c.tag != ClassTag::Inf)
            continue;
        for (Symbol s : members(c.set)) {
            ext.symbols.push_back({ExtSymbol::Kind::Pair, s, c.set, 0});
            names.push_back("(" + alpha.name(s) + "," + set_name(c.set, alpha) + ")");
        }
    }
    // constant slot per distinct constant value (1-based; slot 0 = no constant)
    std::map<DataValue, std::size_t> slot;
    std::size_t ci = 0;
    for (const auto& c : p.classes) {
        if (c.tag != ClassTag::FinSmall)
            continue;
        ++ci;
        for (Symbol s : members(c.set)) {
            for (std::uint32_t j = 1; j <= c.size; ++j) {
                DataValue d = constant_value(ci - 1, j, eps);
                ext.symbols.push_back({ExtSymbol::Kind::Constant, s, c.set, d});
                names.push_back("(" + alpha.name(s) + ",#" + std::to_string(d) + ")");
                slot.emplace(d, slot.size() + 1);
            }
        }
    }
    ext.alphabet = make_alphabet(names);
    ext.stride = cfg.mode == GuessMode::FourWay ? slot.size() + 1 : 1;
    std::vector<std::vector<Symbol>> by_base(n);
    for (Symbol s = 0; s < ext.symbols.size(); ++s)
        by_base[ext.symbols[s].base].push_back(s);
    std::vector<Transition> trans;
    for (const auto& t : a.ts.transitions()) {
        const bool is_data = (data >> t.symbol) & 1u;
        for (Symbol s : by_base[t.symbol]) {
            const auto& es = ext.symbols[s];
            for (std::size_t c = 0; c < ext.stride; ++c) {
                std::size_t next = c;
                if (ext.stride > 1 && is_data) {
                    if (es.kind == ExtSymbol::Kind::Constant) {
                        std::size_t k = slot.at(es.constant);
                        if (k == c)
                            continue;
                        next = k;
                    } else {
                        next = 0;
                    }
                }
                trans.push_back({static_cast<State>(t.from * ext.stride + c), s,
                                 static_cast<State>(t.to * ext.stride + next)});
            }
        }
    }
    const std::size_t states = a.ts.state_count() * ext.stride;
    ext.ts = TransitionSystem(ext.alphabet, states, std::move(trans));
    ext.initial = static_cast<State>(a.initial * ext.stride);
    ext.final.assign(states, false);
    for (State s = 0; s < states; ++s)
        ext.final[s] = a.final[s / ext.stride];
    return ext;
}

namespace {

// Presburger side; with `compact` every pair symbol of a letter is merged into one symbol
// (they are interchangeable for the finite part), so the result only depends on the
// letters having an Inf class. `back` maps compact symbols to extended ones.
PresburgerAutomaton presburger_side(const ExtendedSystem& ext, State q, const PartitionGuess& p,
                                    const ConstraintSet& c, const EngineConfig& cfg, bool compact,
                                    std::vector<Symbol>* back) {
    const std::size_t n = ext.symbols.empty() ? 0 : static_cast<std::size_t>(std::count_if(
                                                        ext.symbols.begin(), ext.symbols.end(), [](const ExtSymbol& s) {
                                                            return s.kind == ExtSymbol::Kind::Plain;
                                                        }));
    const Mask data = data_mask_of(cfg, n);
    const std::size_t eps = epsilon_of(cfg, n);
    const Mask keys = c.key_mask();

    std::vector<Symbol> map(ext.symbols.size());
    std::vector<Symbol> rev;
    std::vector<std::string> names;
    std::map<Symbol, Symbol> pair_slot;
    for (Symbol s = 0; s < ext.symbols.size(); ++s) {
        const auto& es = ext.symbols[s];
        if (compact && es.kind == ExtSymbol::Kind::Pair) {
            auto it = pair_slot.find(es.base);
            if (it != pair_slot.end()) {
                map[s] = it->second;
                continue;
            }
            pair_slot.emplace(es.base, static_cast<Symbol>(rev.size()));
            map[s] = static_cast<Symbol>(rev.size());
            rev.push_back(s);
            names.push_back("(" + ext.alphabet->name(es.base) + ",*)");
            continue;
        }
        map[s] = static_cast<Symbol>(rev.size());
        rev.push_back(s);
        names.push_back(ext.alphabet->name(s));
    }
    std::vector<Transition> trans;
    for (const auto& t : ext.ts.transitions())
        trans.push_back({t.from, map[t.symbol], t.to});
    PresburgerAutomaton pa;
    pa.nfa.ts = TransitionSystem(make_alphabet(names), ext.ts.state_count(), std::move(trans));
    pa.nfa.initial = ext.initial;
    pa.nfa.finals.assign(ext.ts.state_count(), false);
    pa.nfa.finals[q] = true;

    auto& f = pa.formula;
    f.freeCount = rev.size();
    std::vector<std::size_t> zclass;
    for (std::size_t i = 0; i < p.classes.size(); ++i) {
        if (is_z(p.classes[i].tag)) {
            zclass.push_back(i);
            f.boundNames.push_back("z" + set_name(p.classes[i].set, *ext.alphabet));
        }
    }
    std::vector<Matrix> atoms;
    for (Symbol a = 0; a < n; ++a) {
        if (!((data >> a) & 1u))
            continue;
        std::vector<VarId> zs;
        for (std::size_t k = 0; k < zclass.size(); ++k)
            if ((p.classes[zclass[k]].set >> a) & 1u)
                zs.push_back(f.bound(k));
        const VarId xa = map[a];
        if (zs.empty()) {
            atoms.push_back(Matrix::of(LinearAtom::leq_const({xa}, 0)));
            continue;
        }
        if ((keys >> a) & 1u)
            atoms.push_back(Matrix::of(LinearAtom::eq({xa}, zs)));
        else
            atoms.push_back(Matrix::of(LinearAtom::leq(zs, {xa})));
    }
    for (std::size_t k = 0; k < zclass.size(); ++k) {
        auto tag = p.classes[zclass[k]].tag;
        atoms.push_back(
            Matrix::of(LinearAtom::geq_const({f.bound(k)}, tag == ClassTag::FinBig ? static_cast<std::int64_t>(eps) : 1)));
    }
    for (Symbol s = 0; s < ext.symbols.size(); ++s) {
        const auto& es = ext.symbols[s];
        if (es.kind != ExtSymbol::Kind::Constant)
            continue;
        atoms.push_back(Matrix::of(LinearAtom::geq_const({map[s]}, 1)));
        if ((keys >> es.base) & 1u)
            atoms.push_back(Matrix::of(LinearAtom::leq_const({map[s]}, 1)));
    }
    f.matrix = Matrix::conj(std::move(atoms));
    if (back)
        *back = std::move(rev);
    return pa;
}

std::vector<bool> banned_symbols(const ExtendedSystem& ext, const PartitionGuess& p, const ConstraintSet& c,
                                 const EngineConfig& cfg) {
    const std::size_t n = static_cast<std::size_t>(std::count_if(
        ext.symbols.begin(), ext.symbols.end(), [](const ExtSymbol& s) { return s.kind == ExtSymbol::Kind::Plain; }));
    const Mask data = data_mask_of(cfg, n);
    const Mask keys = c.key_mask();
    const Mask covered = z_letters(p);
    std::vector<bool> banned(ext.symbols.size(), false);
    for (Symbol s = 0; s < ext.symbols.size(); ++s) {
        const auto& es = ext.symbols[s];
        if (!((data >> es.base) & 1u))
            continue;
        if (cfg.finiteData) {
            banned[s] = true;
            continue;
        }
        const bool key = (keys >> es.base) & 1u;
        if (es.kind == ExtSymbol::Kind::Plain)
            banned[s] = key || !((covered >> es.base) & 1u);
        else if (es.kind == ExtSymbol::Kind::Constant)
            banned[s] = key;
    }
    return banned;
}

} // namespace

PresburgerAutomaton build_presburger_side(const ExtendedSystem& ext, State q, const PartitionGuess& p,
                                          const ConstraintSet& c, const EngineConfig& cfg) {
    return presburger_side(ext, q, p, c, cfg, false, nullptr);
}

BuchiAutomaton build_tail_buchi(const ExtendedSystem& ext, State q, const PartitionGuess& p, const ConstraintSet& c,
                                const EngineConfig& cfg) {
    auto banned = banned_symbols(ext, p, c, cfg);
    std::vector<Transition> trans;
    for (const auto& t : ext.ts.transitions())
        if (!banned[t.symbol])
            trans.push_back(t);
    BuchiAutomaton rooted;
    rooted.ts = TransitionSystem(ext.alphabet, ext.ts.state_count(), std::move(trans));
    rooted.initial = q;
    rooted.final = ext.final;
    std::vector<Symbol> required;
    for (Symbol s = 0; s < ext.symbols.size(); ++s)
        if (ext.symbols[s].kind == ExtSymbol::Kind::Pair)
            required.push_back(s);
    if (required.empty())
        return rooted;
    return buchi_intersect(rooted, monitor_inf_often(ext.alphabet, required));
}

WitnessRecipe synthesize_witness(const PartitionGuess& p, const ExtendedSystem& ext, std::vector<Symbol> u,
                                 std::vector<Symbol> v_prefix, std::vector<Symbol> v_cycle,
                                 const std::vector<std::uint64_t>& counts, const ConstraintSet& c,
                                 const EngineConfig& cfg) {
    if (v_cycle.empty())
        throw InputError("tail cycle must be nonempty");
    const std::size_t n = static_cast<std::size_t>(std::count_if(
        ext.symbols.begin(), ext.symbols.end(), [](const ExtSymbol& s) { return s.kind == ExtSymbol::Kind::Plain; }));
    const Mask data = data_mask_of(cfg, n);
    WitnessRecipe r;
    r.partition = p;
    r.mode = cfg.mode;
    r.dataMask = data;
    r.alphabet = ext.alphabet;
    r.symbols = ext.symbols;
    r.u = std::move(u);
    r.vPrefix = std::move(v_prefix);
    r.vCycle = std::move(v_cycle);

    std::vector<std::size_t> zclass;
    for (std::size_t i = 0; i < p.classes.size(); ++i)
        if (is_z(p.classes[i].tag))
            zclass.push_back(i);
    if (counts.size() != zclass.size())
        throw InputError("class counts do not match the partition");
    std::vector<std::uint64_t> parikh(ext.symbols.size(), 0);
    for (Symbol s : r.u)
        parikh.at(s) += 1;
    const Mask keys = c.key_mask();
    for (Symbol a = 0; a < n; ++a) {
        if (!((data >> a) & 1u))
            continue;
        std::uint64_t need = 0;
        for (std::size_t k = 0; k < zclass.size(); ++k)
            if ((p.classes[zclass[k]].set >> a) & 1u)
                need += counts[k];
        if (parikh[a] < need || (((keys >> a) & 1u) && parikh[a] != need) || (need == 0 && parikh[a] > 0))
            throw InputError("class counts inconsistent with the Parikh image of u");
    }

    auto& L = r.layout;
    L.epsilon = epsilon_of(cfg, n);
    DataValue next = static_cast<DataValue>(p.classes.size() * L.epsilon) + 1;
    L.xiStart.assign(p.classes.size(), 0);
    L.counts.assign(p.classes.size(), 0);
    for (std::size_t k = 0; k < zclass.size(); ++k) {
        L.xiStart[zclass[k]] = next;
        L.counts[zclass[k]] = counts[k];
        next += counts[k];
    }
    L.poolBase = next;
    L.poolCount = p.count(ClassTag::Inf);
    return r;
}

namespace {

struct PrefixAssigner {
    const WitnessRecipe& r;
    const Mask keys;
    std::vector<DataValue>& val;
    std::vector<std::size_t> positions; // plain data positions of u, in order
    std::vector<std::vector<DataValue>> allowed; // per letter
    std::vector<std::size_t> remaining;          // per letter
    std::vector<std::set<DataValue>> uncovered;  // per letter
    std::vector<std::set<DataValue>> used;       // per letter (keys)
    std::vector<long> prev_plain;                // per position index: index into positions of previous data pos if plain, else -1
    std::size_t budget = 200000;

    bool run() {
        const std::size_t n = allowed.size();
        remaining.assign(n, 0);
        for (auto i : positions)
            remaining[r.symbols[r.u[i]].base]++;
        for (Symbol a = 0; a < n; ++a)
            if (remaining[a] < uncovered[a].size())
                return false;
        return dfs(0);
    }

    bool dfs(std::size_t k) {
        if (k == positions.size())
            return true;
        if (budget-- == 0)
            return false;
        const std::size_t i = positions[k];
        const Symbol a = r.symbols[r.u[i]].base;
        const bool key = (keys >> a) & 1u;
        DataValue forbid = prev_plain[k] >= 0 ? val[positions[static_cast<std::size_t>(prev_plain[k])]] : 0;
        std::vector<DataValue> cand;
        if (uncovered[a].size() == remaining[a]) {
            cand.assign(uncovered[a].begin(), uncovered[a].end());
        } else {
            cand.assign(uncovered[a].begin(), uncovered[a].end());
            for (DataValue v : allowed[a])
                if (!uncovered[a].count(v))
                    cand.push_back(v);
        }
        for (DataValue v : cand) {
            if (v == forbid)
                continue;
            if (key && used[a].count(v))
                continue;
            const bool was_uncovered = uncovered[a].erase(v) > 0;
            if (key)
                used[a].insert(v);
            remaining[a]--;
            val[i] = v;
            if (dfs(k + 1))
                return true;
            val[i] = 0;
            remaining[a]++;
            if (key)
                used[a].erase(v);
            if (was_uncovered)
                uncovered[a].insert(v);
            if (budget == 0)
                return false;
        }
        return false;
    }
};

bool group_pairs(const WitnessRecipe& r, std::size_t horizon, std::size_t n, std::vector<DataValue>& val,
                 const std::vector<long>& data_index) {
    const bool adjacency = r.mode == GuessMode::FourWay;
    std::size_t pool = 0;
    for (const auto& cls : r.partition.classes) {
        if (cls.tag != ClassTag::Inf)
            continue;
        auto letters = members(cls.set);
        std::vector<std::vector<std::size_t>> pending(letters.size());
        for (std::size_t i = 0; i < horizon; ++i) {
            const auto& es = r.symbols[r.at(i)];
            if (es.kind != ExtSymbol::Kind::Pair || es.set != cls.set)
                continue;
            auto it = std::find(letters.begin(), letters.end(), es.base);
            pending[static_cast<std::size_t>(it - letters.begin())].push_back(i);
        }
        std::vector<std::size_t> head(letters.size(), 0);
        std::uint64_t k = 0;
        for (;;) {
            bool all = true;
            for (std::size_t l = 0; l < letters.size(); ++l)
                all = all && head[l] < pending[l].size();
            if (!all)
                break;
            std::vector<std::size_t> order(letters.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t x, std::size_t y) { return pending[x][head[x]] < pending[y][head[y]]; });
            std::vector<std::size_t> chosen;
            std::vector<std::pair<std::size_t, std::size_t>> picks; // (letter, index into pending)
            bool ok = true;
            for (std::size_t l : order) {
                std::size_t j = head[l];
                auto clash = [&](std::size_t pos) {
                    if (!adjacency)
                        return false;
                    for (std::size_t c : chosen)
                        if (std::labs(data_index[pos] - data_index[c]) == 1)
                            return true;
                    return false;
                };
                while (j < pending[l].size() && (val[pending[l][j]] != 0 || clash(pending[l][j])))
                    ++j;
                if (j == pending[l].size()) {
                    ok = false;
                    break;
                }
                chosen.push_back(pending[l][j]);
                picks.emplace_back(l, j);
            }
            if (!ok)
                break;
            const DataValue v = r.layout.poolBase + pool + k * r.layout.poolCount;
            ++k;
            for (auto [l, j] : picks) {
                val[pending[l][j]] = v;
                while (head[l] < pending[l].size() && val[pending[l][head[l]]] != 0)
                    ++head[l];
            }
        }
        ++pool;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (r.symbols[r.at(i)].kind == ExtSymbol::Kind::Pair && val[i] == 0)
            return false;
    return true;
}

} // namespace

std::optional<DataWord> concretize(const WitnessRecipe& r, std::size_t n, const ConstraintSet& c) {
    const std::size_t base_n = static_cast<std::size_t>(std::count_if(
        r.symbols.begin(), r.symbols.end(), [](const ExtSymbol& s) { return s.kind == ExtSymbol::Kind::Plain; }));
    const Mask data = r.dataMask;
    const bool four = r.mode == GuessMode::FourWay;
    const auto& L = r.layout;
    const auto& cls = r.partition.classes;

    // eligible xi values per letter, ascending
    std::vector<std::vector<DataValue>> allowed(base_n);
    std::vector<std::set<DataValue>> cover(base_n);
    for (std::size_t ci = 0; ci < cls.size(); ++ci) {
        if (!is_z(cls[ci].tag))
            continue;
        for (Symbol a : members(cls[ci].set)) {
            for (std::uint64_t j = 0; j < L.counts[ci]; ++j) {
                allowed[a].push_back(L.xiStart[ci] + j);
                cover[a].insert(L.xiStart[ci] + j);
            }
        }
    }
    for (auto& v : allowed)
        std::sort(v.begin(), v.end());

    const std::size_t min_h = std::max(n, r.length());
    for (std::size_t attempt = 0; attempt < 64; ++attempt) {
        const std::size_t horizon = min_h + (attempt + 2) * r.vCycle.size() * (attempt + 1);
        std::vector<DataValue> val(horizon, 0);
        std::vector<long> data_index(horizon, -1);
        long di = 0;
        for (std::size_t i = 0; i < horizon; ++i)
            if ((data >> r.symbols[r.at(i)].base) & 1u)
                data_index[i] = di++;
        for (std::size_t i = 0; i < horizon; ++i) {
            const auto& es = r.symbols[r.at(i)];
            if (es.kind == ExtSymbol::Kind::Constant)
                val[i] = es.constant;
        }
        // finite part
        PrefixAssigner pa{r, c.key_mask(), val, {}, allowed, {}, cover, std::vector<std::set<DataValue>>(base_n), {}};
        long last_data = -1;
        bool last_plain = false;
        for (std::size_t i = 0; i < r.u.size(); ++i) {
            const auto& es = r.symbols[r.u[i]];
            if (!((data >> es.base) & 1u))
                continue;
            if (es.kind == ExtSymbol::Kind::Plain) {
                long prev = -1;
                if (four && last_plain && last_data >= 0)
                    prev = static_cast<long>(pa.positions.size()) - 1;
                pa.positions.push_back(i);
                pa.prev_plain.push_back(prev);
            }
            last_data = static_cast<long>(i);
            last_plain = es.kind == ExtSymbol::Kind::Plain;
        }
        if (!pa.run())
            return std::nullopt;
        // tail plain letters: lowest eligible value, different from the previous data value in four-way mode
        DataValue prev_val = 0;
        for (std::size_t i = 0; i < r.u.size(); ++i)
            if (data_index[i] >= 0)
                prev_val = val[i];
        for (std::size_t i = r.u.size(); i < horizon; ++i) {
            const auto& es = r.symbols[r.at(i)];
            if (!((data >> es.base) & 1u))
                continue;
            if (es.kind == ExtSymbol::Kind::Plain) {
                const auto& opts = allowed[es.base];
                if (opts.empty())
                    return std::nullopt;
                DataValue pick = 0;
                for (DataValue v : opts) {
                    if (four && v == prev_val)
                        continue;
                    pick = v;
                    break;
                }
                if (pick == 0)
                    return std::nullopt;
                val[i] = pick;
            }
            prev_val = val[i];
        }
        if (!group_pairs(r, horizon, n, val, data_index))
            continue;
        DataWord w(n);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = {r.symbols[r.at(i)].base, val[i]};
        return w;
    }
    return std::nullopt;
}

DataWord data_subsequence(const DataWord& w, Mask data_mask) {
    DataWord out;
    for (const auto& l : w)
        if ((data_mask >> l.symbol) & 1u)
            out.push_back(l);
    return out;
}

VerifyReport verify_witness_prefix(const WitnessRecipe& r, std::size_t n, const Adc& adc) {
    if (n < r.length())
        throw InputError("unroll length shorter than the recipe");
    if (r.vCycle.empty())
        throw InputError("recipe has an empty cycle");
    VerifyReport rep;
    rep.runAccepted = accepts_lasso(adc.automaton, r.projected_prefix(), r.projected_cycle());
    rep.pairsRecur = true;
    for (Symbol s = 0; s < r.symbols.size(); ++s)
        if (r.symbols[s].kind == ExtSymbol::Kind::Pair &&
            std::find(r.vCycle.begin(), r.vCycle.end(), s) == r.vCycle.end())
            rep.pairsRecur = false;
    auto w = concretize(r, n, adc.constraints);
    if (!w) {
        rep.failure = "data assignment could not be completed";
        return rep;
    }
    rep.prefix = *w;
    const auto& C = adc.constraints;
    auto checks = check_constraints(*w, C);
    rep.keysAndDenials = true;
    rep.inclusionFinite = true;
    rep.inclusionStructural = true;
    auto is_pool = [&](DataValue v) { return r.layout.poolCount > 0 && v >= r.layout.poolBase; };
    for (std::size_t k = 0; k < C.size(); ++k) {
        const auto& con = C.items()[k];
        if (con.kind != Constraint::Kind::Inclusion) {
            if (!checks[k].holds && rep.keysAndDenials) {
                rep.keysAndDenials = false;
                rep.failure = C.describe(con, *adc.automaton.ts.alphabet()) + " violated";
                rep.positions = std::make_pair(*checks[k].first, *checks[k].second);
            }
            if (con.kind == Constraint::Kind::Denial)
                for (const auto& cl : r.partition.classes)
                    if (cl.tag == ClassTag::Inf && ((cl.set >> con.a) & 1u) && ((cl.set >> con.b) & 1u))
                        rep.inclusionStructural = false;
            continue;
        }
        std::set<DataValue> cover;
        for (const auto& l : *w)
            if (std::binary_search(con.targets.begin(), con.targets.end(), l.symbol))
                cover.insert(l.value);
        for (std::size_t i = 0; i < w->size(); ++i) {
            const auto& l = (*w)[i];
            if (l.symbol != con.a || is_pool(l.value) || cover.count(l.value))
                continue;
            if (rep.inclusionFinite) {
                rep.inclusionFinite = false;
                if (rep.failure.empty())
                    rep.failure = C.describe(con, *adc.automaton.ts.alphabet()) + " violated";
                rep.positions = std::make_pair(i + 1, i + 1);
            }
        }
        for (const auto& cl : r.partition.classes)
            if (cl.tag == ClassTag::Inf && ((cl.set >> con.a) & 1u) && (cl.set & con.target_mask()) == 0)
                rep.inclusionStructural = false;
    }
    if (!rep.inclusionStructural && rep.failure.empty())
        rep.failure = "an infinite class is forced empty by the constraints";
    if (r.mode == GuessMode::FourWay) {
        auto d = data_subsequence(*w, r.dataMask);
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            if (d[i].value == d[i + 1].value) {
                rep.locallyDifferent = false;
                if (rep.failure.empty())
                    rep.failure = "adjacent data positions share a value";
                break;
            }
        }
    }
    if (!rep.runAccepted && rep.failure.empty())
        rep.failure = "projection is not accepted by the automaton";
    if (!rep.pairsRecur && rep.failure.empty())
        rep.failure = "a pair symbol does not recur in the cycle";
    rep.ok = rep.runAccepted && rep.keysAndDenials && rep.pairsRecur && rep.inclusionFinite &&
             rep.inclusionStructural && rep.locallyDifferent;
    return rep;
}

namespace {

// Maximal number of occurrences of each letter over accepting runs (kUnbounded when a
// letter can be read inside a cycle that an accepting run may traverse).
std::vector<std::uint64_t> occurrence_bounds(const BuchiAutomaton& a) {
    const auto& ts = a.ts;
    const std::size_t k = ts.symbol_count();
    std::uint32_t ncomp = 0;
    auto comp = scc_ids(ts, &ncomp);
    std::vector<bool> cyclic(ncomp, false), has_final(ncomp, false);
    for (const auto& t : ts.transitions())
        if (comp[t.from] == comp[t.to])
            cyclic[comp[t.from]] = true;
    for (State q = 0; q < ts.state_count(); ++q)
        if (a.final[q])
            has_final[comp[q]] = true;
    std::vector<bool> good(ts.state_count(), false);
    for (State q = 0; q < ts.state_count(); ++q)
        good[q] = cyclic[comp[q]] && has_final[comp[q]];
    auto reach = reachable_from(ts, a.initial);
    auto co = coreachable_to(ts, good);
    std::vector<std::uint64_t> out(k, 0);
    std::vector<bool> useful(ts.transitions().size(), false);
    for (std::size_t i = 0; i < ts.transitions().size(); ++i) {
        const auto& t = ts.transitions()[i];
        useful[i] = reach[t.from] && co[t.to];
        if (useful[i] && comp[t.from] == comp[t.to])
            out[t.symbol] = kUnbounded;
    }
    for (Symbol s = 0; s < k; ++s) {
        if (out[s] == kUnbounded)
            continue;
        // longest path over the condensation; Tarjan numbers successors lower
        std::vector<long long> best(ncomp, -1);
        best[comp[a.initial]] = 0;
        std::vector<std::vector<std::size_t>> by_comp(ncomp);
        for (std::size_t i = 0; i < ts.transitions().size(); ++i)
            if (useful[i])
                by_comp[comp[ts.transitions()[i].from]].push_back(i);
        std::uint64_t m = 0;
        for (long c = static_cast<long>(ncomp) - 1; c >= 0; --c) {
            if (best[c] < 0)
                continue;
            m = std::max<std::uint64_t>(m, static_cast<std::uint64_t>(best[c]));
            for (auto i : by_comp[c]) {
                const auto& t = ts.transitions()[i];
                if (comp[t.to] == static_cast<std::uint32_t>(c))
                    continue;
                best[comp[t.to]] = std::max(best[comp[t.to]], best[c] + (t.symbol == s ? 1 : 0));
            }
        }
        out[s] = m;
    }
    return out;
}

bool has_sdr(const std::vector<Mask>& family, Mask letters) {
    // bipartite matching family -> distinct letters
    std::vector<long> owner(64, -1);
    std::function<bool(std::size_t, std::vector<bool>&)> aug = [&](std::size_t i, std::vector<bool>& seen) {
        for (Symbol a : members(family[i] & letters)) {
            if (seen[a])
                continue;
            seen[a] = true;
            if (owner[a] < 0 || aug(static_cast<std::size_t>(owner[a]), seen)) {
                owner[a] = static_cast<long>(i);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::vector<bool> seen(64, false);
        if (!aug(i, seen))
            return false;
    }
    return true;
}

struct TailResult {
    std::vector<Symbol> stem, cycle;
};

struct PresResult {
    std::vector<Symbol> word; // extended symbols
    std::vector<std::uint64_t> counts;
};

class Engine {
public:
    Engine(const Adc& adc, const EngineConfig& cfg, const SearchOptions& opts, bool keyfree)
        : adc_(adc), cfg_(cfg), opts_(opts), keyfree_(keyfree) {}

    Verdict run(const std::string& procedure) {
        Verdict v;
        v.procedure = procedure;
        const std::size_t n = adc_.automaton.ts.symbol_count();
        if (n > 63)
            throw InputError("alphabet too large");
        data_ = data_mask_of(cfg_, n);
        eps_ = epsilon_of(cfg_, n);
        for (const auto& c : adc_.constraints) {
            Mask used = bit(c.a) | (c.kind == Constraint::Kind::Denial ? bit(c.b) : 0) |
                        (c.kind == Constraint::Kind::Inclusion ? c.target_mask() : 0);
            if (used & ~data_)
                throw InputError("constraint mentions a letter that carries no data");
            if (std::any_of(c.targets.begin(), c.targets.end(), [&](Symbol s) { return s >= n; }) || c.a >= n ||
                c.b >= n)
                throw InputError("constraint symbol outside the alphabet");
        }
        if (!preprocess()) {
            v.stats = stats_;
            return v;
        }
        std::vector<PartitionGuess> block;
        std::optional<WitnessRecipe> found;
        auto flush = [&]() {
            if (block.empty())
                return;
            if (!opts_.parallel || block.size() == 1) {
                for (const auto& p : block) {
                    ++stats_.partitionsTried;
                    auto w = probe(p, stats_);
                    if (w) {
                        found = std::move(w);
                        break;
                    }
                }
            } else {
                std::vector<std::optional<WitnessRecipe>> res(block.size());
                std::vector<SearchStats> st(block.size());
                std::vector<std::exception_ptr> err(block.size());
#pragma omp parallel for schedule(dynamic, 1)
                for (long i = 0; i < static_cast<long>(block.size()); ++i) {
                    try {
                        res[i] = probe(block[i], st[i]);
                    } catch (...) {
                        err[i] = std::current_exception();
                    }
                }
                for (std::size_t i = 0; i < block.size(); ++i) {
                    if (err[i])
                        std::rethrow_exception(err[i]);
                    ++stats_.partitionsTried;
                    merge(st[i]);
                    if (res[i]) {
                        found = std::move(res[i]);
                        break;
                    }
                }
            }
            block.clear();
        };
        const std::size_t bs = opts_.parallel ? std::max<std::size_t>(opts_.blockSize, 1) : 1;
        std::size_t emitted = 0;
        enumerate([&](const PartitionGuess& p) {
            if (opts_.partitionLimit && ++emitted > opts_.partitionLimit)
                throw SearchLimitExceeded("partition guess limit reached");
            block.push_back(p);
            if (block.size() >= bs)
                flush();
            return !found.has_value();
        });
        if (!found)
            flush();
        v.stats = stats_;
        if (found) {
            v.nonEmpty = true;
            v.witness = std::move(found);
        }
        return v;
    }

private:
    void merge(const SearchStats& s) {
        stats_.probes += s.probes;
        stats_.tailChecks += s.tailChecks;
        stats_.presburgerQueries += s.presburgerQueries;
        stats_.supportsTried += s.supportsTried;
        stats_.rejectedWitnesses += s.rejectedWitnesses;
    }

    // Drops letters that no admissible class can hold, until nothing changes.
    bool preprocess() {
        work_ = adc_.automaton;
        const std::size_t n = work_.ts.symbol_count();
        for (;;) {
            auto use = letter_use(work_);
            Mask live = 0, rec = 0;
            for (Symbol a = 0; a < n; ++a) {
                if (use.occurs[a])
                    live |= bit(a);
                if (use.recurs[a])
                    rec |= bit(a);
            }
            const Mask live_data = live & data_;
            if (std::popcount(live_data) > 20)
                throw InputError("too many data letters for class enumeration");
            allowed_.clear();
            for (Mask s = live_data; s; s = (s - 1) & live_data)
                if (!opts_.prune || !forced_empty(s, adc_.constraints))
                    allowed_.push_back(s);
            std::sort(allowed_.begin(), allowed_.end());
            Mask holdable = 0;
            for (Mask s : allowed_)
                holdable |= s;
            const Mask dead = live_data & ~holdable;
            if (dead == 0) {
                recurring_ = rec;
                break;
            }
            std::vector<Transition> keep;
            for (const auto& t : work_.ts.transitions())
                if (!((dead >> t.symbol) & 1u))
                    keep.push_back(t);
            work_.ts = TransitionSystem(work_.ts.alphabet(), work_.ts.state_count(), std::move(keep));
        }
        if (!buchi_nonempty(work_))
            return false;
        bounds_ = occurrence_bounds(work_);
        keys_ = adc_.constraints.key_mask();
        return true;
    }

    std::uint64_t min_size(const ClassGuess& c) const {
        switch (c.tag) {
        case ClassTag::Fin:
            return 1;
        case ClassTag::FinSmall:
            return c.size;
        case ClassTag::FinBig:
            return eps_;
        case ClassTag::Inf:
            return kUnbounded;
        default:
            return 0;
        }
    }

    bool within_budget(const std::vector<ClassGuess>& cls) const {
        for (Symbol a : members(data_)) {
            if (bounds_[a] == kUnbounded)
                continue;
            std::uint64_t need = 0;
            for (const auto& c : cls) {
                if (!((c.set >> a) & 1u))
                    continue;
                auto m = min_size(c);
                if (m == kUnbounded)
                    return false;
                need += m;
            }
            if (need > bounds_[a])
                return false;
        }
        return true;
    }

    std::vector<ClassGuess> finite_options(Mask s) const {
        std::vector<ClassGuess> out;
        if (cfg_.mode == GuessMode::ThreeWay) {
            out.push_back({s, ClassTag::Fin, 0});
        } else {
            for (std::uint32_t k = 1; k < eps_; ++k)
                out.push_back({s, ClassTag::FinSmall, k});
            out.push_back({s, ClassTag::FinBig, 0});
        }
        return out;
    }

    // Canonical order: number of non-Zero classes, then number of Inf classes, then
    // lexicographic over class choice and finite tags.
    void enumerate(const std::function<bool(const PartitionGuess&)>& emit) {
        const std::size_t m = allowed_.size();
        const std::size_t max_k = keyfree_ ? std::min<std::size_t>(m, std::popcount(data_)) : m;
        std::vector<std::vector<ClassGuess>> fin(m);
        std::vector<bool> inf_ok(m);
        for (std::size_t i = 0; i < m; ++i) {
            fin[i] = finite_options(allowed_[i]);
            inf_ok[i] = !cfg_.finiteData && (allowed_[i] & ~recurring_) == 0;
        }
        for (std::size_t k = 0; k <= max_k; ++k) {
            std::vector<std::size_t> comb(k);
            std::iota(comb.begin(), comb.end(), 0);
            for (;;) {
                if (!enumerate_tags(comb, fin, inf_ok, emit))
                    return;
                // next combination
                std::size_t i = k;
                while (i > 0 && comb[i - 1] == m - k + i - 1)
                    --i;
                if (i == 0)
                    break;
                ++comb[i - 1];
                for (std::size_t j = i; j < k; ++j)
                    comb[j] = comb[j - 1] + 1;
            }
        }
    }

    bool enumerate_tags(const std::vector<std::size_t>& comb, const std::vector<std::vector<ClassGuess>>& fin,
                        const std::vector<bool>& inf_ok, const std::function<bool(const PartitionGuess&)>& emit) {
        const std::size_t k = comb.size();
        std::vector<Mask> family;
        for (auto i : comb)
            family.push_back(allowed_[i]);
        if (keyfree_ && !has_sdr(family, data_))
            return true;
        Mask covered = 0;
        for (Mask m : family)
            covered |= m;
        const Mask never = data_ & ~covered;
        if (!run_shape_ok(never, cfg_.finiteData ? covered : 0, 0))
            return true;
        // no Inf candidate and even the cheapest finite tagging is over budget
        if (std::none_of(comb.begin(), comb.end(), [&](std::size_t i) { return inf_ok[i]; })) {
            std::vector<ClassGuess> cheapest;
            for (auto i : comb)
                cheapest.push_back(fin[i].front());
            if (!within_budget(cheapest))
                return true;
        }
        for (std::size_t ninf = 0; ninf <= k; ++ninf) {
            std::vector<std::size_t> infpos(ninf);
            std::iota(infpos.begin(), infpos.end(), 0);
            for (;;) {
                bool ok = true;
                std::vector<bool> is_inf(k, false);
                Mask inf_union = 0;
                for (auto p : infpos) {
                    is_inf[p] = true;
                    ok = ok && inf_ok[comb[p]];
                    inf_union |= allowed_[comb[p]];
                }
                if (ok) {
                    const Mask finite = cfg_.finiteData ? covered : (keys_ & covered & ~inf_union);
                    ok = run_shape_ok(never, finite, inf_union);
                }
                if (ok) {
                    std::vector<std::size_t> rest;
                    for (std::size_t p = 0; p < k; ++p)
                        if (!is_inf[p])
                            rest.push_back(p);
                    std::vector<std::size_t> odo(rest.size(), 0);
                    for (;;) {
                        PartitionGuess g;
                        g.classes.resize(k);
                        for (std::size_t p = 0; p < k; ++p)
                            if (is_inf[p])
                                g.classes[p] = {allowed_[comb[p]], ClassTag::Inf, 0};
                        for (std::size_t r = 0; r < rest.size(); ++r)
                            g.classes[rest[r]] = fin[comb[rest[r]]][odo[r]];
                        if (within_budget(g.classes) && !emit(g))
                            return false;
                        std::size_t r = rest.size();
                        while (r > 0) {
                            --r;
                            if (++odo[r] < fin[comb[rest[r]]].size())
                                break;
                            odo[r] = 0;
                            if (r == 0) {
                                r = SIZE_MAX;
                                break;
                            }
                        }
                        if (rest.empty() || r == SIZE_MAX)
                            break;
                    }
                }
                std::size_t i = ninf;
                while (i > 0 && infpos[i - 1] == k - ninf + i - 1)
                    --i;
                if (i == 0)
                    break;
                ++infpos[i - 1];
                for (std::size_t j = i; j < ninf; ++j)
                    infpos[j] = infpos[j - 1] + 1;
            }
        }
        return true;
    }

    // Some accepting run never reads `never`, reads `finite` finitely often and every letter
    // of `recur` infinitely often.
    bool run_shape_ok(Mask never, Mask finite, Mask recur) {
        auto key = std::make_tuple(never, finite, recur);
        auto it = shape_cache_.find(key);
        if (it != shape_cache_.end())
            return it->second;
        std::vector<Transition> outer, inner;
        for (const auto& t : work_.ts.transitions()) {
            if ((never >> t.symbol) & 1u)
                continue;
            outer.push_back(t);
            if (!((finite >> t.symbol) & 1u))
                inner.push_back(t);
        }
        const std::size_t n = work_.ts.state_count();
        TransitionSystem g(work_.ts.alphabet(), n, std::move(outer));
        TransitionSystem h(work_.ts.alphabet(), n, std::move(inner));
        auto reach = reachable_from(g, work_.initial);
        std::uint32_t ncomp = 0;
        auto comp = scc_ids(h, &ncomp);
        std::vector<Mask> reads(ncomp, 0);
        std::vector<bool> nontrivial(ncomp, false), final_reached(ncomp, false);
        for (const auto& t : h.transitions()) {
            if (comp[t.from] != comp[t.to])
                continue;
            nontrivial[comp[t.from]] = true;
            reads[comp[t.from]] |= bit(t.symbol);
        }
        for (State q = 0; q < n; ++q)
            if (work_.final[q] && reach[q])
                final_reached[comp[q]] = true;
        bool ok = false;
        for (std::uint32_t c = 0; c < ncomp && !ok; ++c)
            ok = nontrivial[c] && final_reached[c] && (reads[c] & recur) == recur;
        shape_cache_.emplace(key, ok);
        return ok;
    }

    static std::string classes_key(const PartitionGuess& p, bool (*pick)(ClassTag)) {
        std::string s;
        for (const auto& c : p.classes)
            if (pick(c.tag))
                s += std::to_string(c.set) + ":" + to_string(c.tag) + ":" + std::to_string(c.size) + ";";
        return s;
    }

    std::string tail_key(const ExtendedSystem& ext, const PartitionGuess& p) const {
        auto banned = banned_symbols(ext, p, adc_.constraints, cfg_);
        Mask banned_plain = 0;
        for (Symbol a = 0; a < work_.ts.symbol_count(); ++a)
            if (banned[a])
                banned_plain |= bit(a);
        return classes_key(p, [](ClassTag t) { return t == ClassTag::Inf || t == ClassTag::FinSmall; }) + "|" +
               std::to_string(banned_plain);
    }

    // States of the extended system from which an admissible tail exists: they reach a
    // nontrivial SCC of the unbanned graph that holds a final state and reads every pair symbol.
    std::shared_ptr<const std::vector<bool>> tail_states(const ExtendedSystem& ext, const PartitionGuess& p,
                                                         const std::string& key, SearchStats& st) {
        if (opts_.cache) {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = tail_states_.find(key);
            if (it != tail_states_.end())
                return it->second;
        }
        ++st.tailChecks;
        auto banned = banned_symbols(ext, p, adc_.constraints, cfg_);
        std::vector<Transition> trans;
        for (const auto& t : ext.ts.transitions())
            if (!banned[t.symbol])
                trans.push_back(t);
        TransitionSystem g(ext.alphabet, ext.ts.state_count(), std::move(trans));
        std::uint32_t ncomp = 0;
        auto comp = scc_ids(g, &ncomp);
        std::vector<bool> nontrivial(ncomp, false), has_final(ncomp, false);
        std::vector<std::vector<bool>> reads(ncomp);
        std::vector<Symbol> required;
        for (Symbol s = 0; s < ext.symbols.size(); ++s)
            if (ext.symbols[s].kind == ExtSymbol::Kind::Pair)
                required.push_back(s);
        for (const auto& t : g.transitions()) {
            if (comp[t.from] != comp[t.to])
                continue;
            nontrivial[comp[t.from]] = true;
            auto& r = reads[comp[t.from]];
            r.resize(ext.symbols.size(), false);
            r[t.symbol] = true;
        }
        for (State q = 0; q < g.state_count(); ++q)
            if (ext.final[q])
                has_final[comp[q]] = true;
        std::vector<bool> good(g.state_count(), false);
        for (State q = 0; q < g.state_count(); ++q) {
            auto c = comp[q];
            good[q] = nontrivial[c] && has_final[c] &&
                      std::all_of(required.begin(), required.end(), [&](Symbol s) { return reads[c][s]; });
        }
        auto res = std::make_shared<const std::vector<bool>>(coreachable_to(g, good));
        if (opts_.cache) {
            std::lock_guard<std::mutex> lock(mu_);
            tail_states_.emplace(key, res);
        }
        return res;
    }

    std::optional<TailResult> tail(const ExtendedSystem& ext, State q, const PartitionGuess& p,
                                   const std::string& key) {
        const std::string k = key + "|" + std::to_string(q);
        if (opts_.cache) {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = tail_cache_.find(k);
            if (it != tail_cache_.end())
                return it->second;
        }
        auto b = build_tail_buchi(ext, q, p, adc_.constraints, cfg_);
        std::optional<TailResult> res;
        if (auto l = buchi_nonempty(b))
            res = TailResult{l->prefixWord, l->cycleWord};
        if (opts_.cache) {
            std::lock_guard<std::mutex> lock(mu_);
            tail_cache_.emplace(k, res);
        }
        return res;
    }

    std::optional<PresResult> presburger(const ExtendedSystem& ext, State q, const PartitionGuess& p,
                                         SearchStats& st) {
        std::string key = classes_key(p, [](ClassTag t) { return t != ClassTag::Inf; }) + "|" +
                          std::to_string(inf_letters(p)) + "|" + std::to_string(q);
        if (opts_.cache) {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = pres_cache_.find(key);
            if (it != pres_cache_.end()) {
                if (!it->second)
                    return std::nullopt;
                return from_canonical(*it->second, ext);
            }
        }
        ++st.presburgerQueries;
        std::vector<Symbol> back;
        auto pa = presburger_side(ext, q, p, adc_.constraints, cfg_, true, &back);
        ParikhStats ps;
        auto sol = parikh_solve(pa, opts_.parikh, &ps);
        st.supportsTried += ps.supportsTried;
        std::optional<PresResult> res;
        if (sol) {
            PresResult r;
            for (Symbol s : sol->word)
                r.word.push_back(back[s]);
            r.counts = sol->bound;
            res = to_canonical(r, ext);
        }
        if (opts_.cache) {
            std::lock_guard<std::mutex> lock(mu_);
            pres_cache_.emplace(key, res);
        }
        if (!res)
            return std::nullopt;
        return from_canonical(*res, ext);
    }

    // Cached words must not depend on the Inf classes beyond their letters: pair symbols are
    // stored as (letter | kPairTag) and constants by their rank among the constant symbols.
    static constexpr Symbol kPairTag = 0x80000000u;
    static constexpr Symbol kConstTag = 0x40000000u;

    static Symbol first_constant(const ExtendedSystem& ext) {
        Symbol e = 0;
        while (e < ext.symbols.size() && ext.symbols[e].kind != ExtSymbol::Kind::Constant)
            ++e;
        return e;
    }

    static PresResult to_canonical(const PresResult& r, const ExtendedSystem& ext) {
        PresResult out = r;
        const Symbol fc = first_constant(ext);
        for (auto& s : out.word) {
            const auto& es = ext.symbols[s];
            if (es.kind == ExtSymbol::Kind::Pair)
                s = es.base | kPairTag;
            else if (es.kind == ExtSymbol::Kind::Constant)
                s = (s - fc) | kConstTag;
        }
        return out;
    }

    static PresResult from_canonical(const PresResult& r, const ExtendedSystem& ext) {
        PresResult out = r;
        const Symbol fc = first_constant(ext);
        for (auto& s : out.word) {
            if (s & kConstTag) {
                s = (s & ~kConstTag) + fc;
            } else if (s & kPairTag) {
                const Symbol letter = s & ~kPairTag;
                for (Symbol e = 0; e < ext.symbols.size(); ++e) {
                    if (ext.symbols[e].kind == ExtSymbol::Kind::Pair && ext.symbols[e].base == letter) {
                        s = e;
                        break;
                    }
                }
            }
        }
        return out;
    }

    std::optional<WitnessRecipe> probe(const PartitionGuess& p, SearchStats& st) {
        ++st.probes;
        auto ext = build_extended_system(work_, p, cfg_);
        auto reach = reachable_from(ext.ts, ext.initial);
        const auto key = tail_key(ext, p);
        auto good = tail_states(ext, p, key, st);
        for (State q = 0; q < ext.ts.state_count(); ++q) {
            if (!reach[q] || !(*good)[q])
                continue;
            auto pr = presburger(ext, q, p, st);
            if (!pr)
                continue;
            auto t = tail(ext, q, p, key);
            if (!t)
                throw std::logic_error("tail state analysis disagrees with lasso search");
            auto rec = synthesize_witness(p, ext, pr->word, t->stem, t->cycle, pr->counts, adc_.constraints, cfg_);
            auto rep = verify_witness_prefix(rec, 3 * rec.length(), adc_);
            if (rep.ok)
                return rec;
            ++st.rejectedWitnesses;
        }
        return std::nullopt;
    }

    const Adc& adc_;
    EngineConfig cfg_;
    SearchOptions opts_;
    bool keyfree_;
    Mask data_ = 0;
    std::size_t eps_ = 0;
    BuchiAutomaton work_;
    std::vector<Mask> allowed_;
    Mask recurring_ = 0;
    std::vector<std::uint64_t> bounds_;
    Mask keys_ = 0;
    std::map<std::tuple<Mask, Mask, Mask>, bool> shape_cache_;
    SearchStats stats_;
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const std::vector<bool>>> tail_states_;
    std::map<std::string, std::optional<TailResult>> tail_cache_;
    std::map<std::string, std::optional<PresResult>> pres_cache_;
};

} // namespace

Verdict engine_nonempty(const Adc& adc, const EngineConfig& cfg, const SearchOptions& opts, bool keyfree_families) {
    Engine e(adc, cfg, opts, keyfree_families);
    return e.run(keyfree_families ? "keyfree" : (cfg.mode == GuessMode::FourWay ? "locally-different" : "general"));
}

Verdict adc_nonempty_general(const Adc& adc, const SearchOptions& opts) { return engine_nonempty(adc, {}, opts, false); }

Verdict adc_nonempty_keyfree(const Adc& adc, const SearchOptions& opts) {
    if (adc.constraints.has_key())
        throw InputError("key-free procedure called with a key constraint");
    return engine_nonempty(adc, {}, opts, true);
}

Verdict adc_nonempty(const Adc& adc, const SearchOptions& opts) {
    return adc.constraints.has_key() ? adc_nonempty_general(adc, opts) : adc_nonempty_keyfree(adc, opts);
}

Verdict locally_different_nonempty(const BuchiAutomaton& a, const ConstraintSet& c, const SearchOptions& opts) {
    EngineConfig cfg;
    cfg.mode = GuessMode::FourWay;
    return engine_nonempty(Adc{a, c}, cfg, opts, false);
}

} // namespace dw
