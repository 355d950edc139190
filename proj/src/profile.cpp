// SPDX-License-Identifier: Apache-2.0
#include "dw/profile.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <tuple>

namespace dw {

const char* flag_text(Flag f) {
    switch (f) {
    case Flag::Star:
        return "*";
    case Flag::Same:
        return "=";
    case Flag::Diff:
        return "!";
    }
    return "?";
}

AlphabetPtr profile_alphabet(const Alphabet& base) {
    std::vector<std::string> names;
    for (Symbol a = 0; a < base.size(); ++a)
        for (int l = 0; l < 3; ++l)
            for (int r = 0; r < 3; ++r)
                names.push_back("(" + base.name(a) + "," + flag_text(static_cast<Flag>(l)) + "," +
                                flag_text(static_cast<Flag>(r)) + ")");
    return make_alphabet(names);
}

Symbol profile_symbol(const ProfileLetter& l) {
    return l.symbol * 9 + static_cast<Symbol>(l.left) * 3 + static_cast<Symbol>(l.right);
}

ProfileLetter profile_letter(Symbol s) { return {s / 9, static_cast<Flag>((s / 3) % 3), static_cast<Flag>(s % 3)}; }

std::vector<Symbol> profile_symbols(const ProfileWord& w) {
    std::vector<Symbol> out;
    for (const auto& l : w)
        out.push_back(profile_symbol(l));
    return out;
}

namespace {

Flag compare(DataValue x, DataValue y) { return x == y ? Flag::Same : Flag::Diff; }

Mask full(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

} // namespace

ProfileWord profile_of(const DataWord& w) {
    ProfileWord out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        Flag l = i == 0 ? Flag::Star : compare(w[i - 1].value, w[i].value);
        Flag r = i + 1 == w.size() ? Flag::Star : compare(w[i].value, w[i + 1].value);
        out.push_back({w[i].symbol, l, r});
    }
    return out;
}

ProfileLasso profile_of(const LassoDataWord& w) {
    if (w.cycle.empty())
        throw ProfileError("lasso cycle must be nonempty");
    auto u = w.unroll(3);
    auto p = profile_of(u);
    const std::size_t a = w.prefix.size() + w.cycle.size();
    ProfileLasso out;
    out.prefix.assign(p.begin(), p.begin() + static_cast<long>(a));
    out.cycle.assign(p.begin() + static_cast<long>(a), p.begin() + static_cast<long>(a + w.cycle.size()));
    return out;
}

std::vector<Zone> zones_of(const DataWord& w) {
    std::vector<Zone> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i == 0 || w[i].value != w[i - 1].value)
            out.push_back({i + 1, i + 1, 0, w[i].value});
        out.back().end = i + 1;
        out.back().labelSet |= bit(w[i].symbol);
    }
    return out;
}

std::vector<Zone> zones_of(const LassoDataWord& w, std::size_t n) {
    if (w.cycle.empty())
        throw ProfileError("lasso cycle must be nonempty");
    const bool constant = std::all_of(w.cycle.begin(), w.cycle.end(),
                                      [&](const DataLetter& l) { return l.value == w.cycle[0].value; });
    const std::size_t horizon = w.prefix.size() + 2 * w.cycle.size() + n + 1;
    auto zs = zones_of(w.take(horizon));
    std::vector<Zone> out;
    for (auto z : zs) {
        if (z.start > n)
            break;
        if (constant && *z.end == horizon) {
            z.end.reset();
            for (const auto& l : w.cycle)
                z.labelSet |= bit(l.symbol);
        }
        out.push_back(z);
    }
    return out;
}

ZonalWord zonal_of(const DataWord& w) {
    ZonalWord out;
    for (const auto& z : zones_of(w)) {
        out.push_back({true, 0, z.labelSet, z.value});
        for (std::size_t i = z.start; i <= *z.end; ++i)
            out.push_back({false, w[i - 1].symbol, 0, 0});
    }
    return out;
}

DataWord data_word_of(const ZonalWord& z) {
    DataWord out;
    std::optional<DataValue> cur;
    for (const auto& l : z) {
        if (l.isSet) {
            cur = l.value;
            continue;
        }
        if (!cur)
            throw ProfileError("zonal word must begin with a set letter");
        out.push_back({l.symbol, *cur});
    }
    return out;
}

bool well_formed(const ZonalWord& z) {
    if (z.empty())
        return true;
    if (!z[0].isSet)
        return false;
    std::optional<DataValue> prev;
    for (std::size_t i = 0; i < z.size();) {
        const auto& s = z[i];
        if (s.set == 0 || (prev && *prev == s.value))
            return false;
        prev = s.value;
        Mask seen = 0;
        std::size_t j = i + 1;
        for (; j < z.size() && !z[j].isSet; ++j)
            seen |= bit(z[j].symbol);
        if (j == i + 1 || seen != s.set)
            return false;
        i = j;
    }
    return true;
}

AlphabetPtr zonal_alphabet(const Alphabet& base) {
    const std::size_t n = base.size();
    if (n > 5)
        throw ProfileError("zonal alphabet supports at most 5 base letters");
    std::vector<std::string> names = base.names();
    for (Mask s = 1; s <= full(n); ++s) {
        std::string t = "{";
        bool first = true;
        for (Symbol a = 0; a < n; ++a) {
            if (!((s >> a) & 1u))
                continue;
            t += (first ? "" : ",") + base.name(a);
            first = false;
        }
        names.push_back(t + "}");
    }
    return make_alphabet(names);
}

Symbol zonal_set_symbol(std::size_t base_size, Mask s) { return static_cast<Symbol>(base_size + s - 1); }

Mask zonal_set_mask(std::size_t base_size) {
    if (base_size > 5)
        throw ProfileError("zonal alphabet supports at most 5 base letters");
    return full(base_size + full(base_size)) & ~full(base_size);
}

DataWord zonal_set_letters(const ZonalWord& z, std::size_t base_size) {
    DataWord out;
    for (const auto& l : z)
        if (l.isSet)
            out.push_back({zonal_set_symbol(base_size, l.set), l.value});
    return out;
}

ZonalConstraints translate_constraints_zonal(const ConstraintSet& c, std::size_t base_size) {
    ZonalConstraints out;
    const Mask all = full(base_size);
    auto containing = [&](Symbol a) {
        std::vector<Symbol> r;
        for (Mask s = 1; s <= all; ++s)
            if ((s >> a) & 1u)
                r.push_back(zonal_set_symbol(base_size, s));
        return r;
    };
    for (const auto& k : c) {
        switch (k.kind) {
        case Constraint::Kind::Key: {
            auto rs = containing(k.a);
            for (Symbol r : rs)
                out.constraints.add(Constraint::key(r));
            for (std::size_t i = 0; i < rs.size(); ++i)
                for (std::size_t j = i + 1; j < rs.size(); ++j)
                    out.constraints.add(Constraint::denial(rs[i], rs[j]));
            out.onceFlags |= bit(k.a);
            break;
        }
        case Constraint::Kind::Inclusion: {
            const Mask t = k.target_mask();
            std::vector<Symbol> targets;
            for (Mask s = 1; s <= all; ++s)
                if (s & t)
                    targets.push_back(zonal_set_symbol(base_size, s));
            for (Symbol r : containing(k.a))
                out.constraints.add(Constraint::inclusion(r, targets));
            break;
        }
        case Constraint::Kind::Denial:
            for (Symbol r : containing(k.a))
                for (Symbol q : containing(k.b))
                    out.constraints.add(Constraint::denial(r, q));
            break;
        }
    }
    return out;
}

bool once_per_zone(const ZonalWord& z, Mask once_flags) {
    Mask seen = 0;
    for (const auto& l : z) {
        if (l.isSet) {
            seen = 0;
            continue;
        }
        if ((once_flags >> l.symbol) & 1u) {
            if ((seen >> l.symbol) & 1u)
                return false;
            seen |= bit(l.symbol);
        }
    }
    return true;
}

BuchiAutomaton zonal_automaton(const BuchiAutomaton& profile, const Alphabet& base, Mask once_flags) {
    const std::size_t n = base.size();
    if (profile.ts.symbol_count() != 9 * n)
        throw ProfileError("profile automaton alphabet does not match the base alphabet");
    auto alpha = zonal_alphabet(base);
    const Mask all = full(n);
    enum Kind { Init, InZone, ExpectSet };
    // (kind, profile state, zone set, letters seen, first: 0 interior, 1 zone start, 2 word start)
    using Key = std::tuple<int, State, Mask, Mask, int>;
    std::map<Key, State> ids;
    std::vector<Key> keys;
    auto id = [&](const Key& k) {
        auto [it, fresh] = ids.emplace(k, static_cast<State>(keys.size()));
        if (fresh)
            keys.push_back(k);
        return it->second;
    };
    id({Init, profile.initial, 0, 0, 0});
    std::vector<Transition> trans;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto [kind, p, s, seen, first] = keys[i];
        const State from = static_cast<State>(i);
        if (kind == Init || kind == ExpectSet) {
            for (Mask t = 1; t <= all; ++t)
                trans.push_back({from, zonal_set_symbol(n, t), id({InZone, p, t, 0, kind == Init ? 2 : 1})});
            continue;
        }
        const Flag left = first == 2 ? Flag::Star : (first == 1 ? Flag::Diff : Flag::Same);
        for (auto ti : profile.ts.out(p)) {
            const auto& t = profile.ts.transitions()[ti];
            auto pl = profile_letter(t.symbol);
            if (pl.left != left || pl.right == Flag::Star || !((s >> pl.symbol) & 1u))
                continue;
            if (((once_flags >> pl.symbol) & 1u) && ((seen >> pl.symbol) & 1u))
                continue;
            const Mask now = seen | bit(pl.symbol);
            if (pl.right == Flag::Diff) {
                if (now == s)
                    trans.push_back({from, pl.symbol, id({ExpectSet, t.to, 0, 0, 0})});
            } else {
                trans.push_back({from, pl.symbol, id({InZone, t.to, s, now, 0})});
            }
        }
    }
    GeneralizedBuchi g;
    g.ts = TransitionSystem(alpha, keys.size(), std::move(trans));
    g.initial = 0;
    g.sets.assign(2, std::vector<bool>(keys.size(), false));
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto [kind, p, s, seen, first] = keys[i];
        (void)first;
        g.sets[0][i] = kind != Init && profile.final[p];
        g.sets[1][i] = kind == ExpectSet || (kind == InZone && seen == s);
    }
    return degeneralize(g);
}

StateReduction state_constraint_reduction(const BuchiAutomaton& profile, const Alphabet& base,
                                          const ConstraintSet& state_constraints) {
    const std::size_t n = base.size();
    const std::size_t q = profile.ts.state_count();
    if (profile.ts.symbol_count() != 9 * n)
        throw ProfileError("profile automaton alphabet does not match the base alphabet");
    StateReduction out;
    out.baseSize = n;
    std::vector<std::string> names;
    for (State s = 0; s < q; ++s)
        for (Symbol a = 0; a < n; ++a)
            names.push_back("(q" + std::to_string(s) + "," + base.name(a) + ")");
    out.adc.base = make_alphabet(names);
    std::vector<Transition> trans;
    for (const auto& t : profile.ts.transitions()) {
        auto pl = profile_letter(t.symbol);
        pl.symbol = out.letter(t.from, pl.symbol);
        trans.push_back({t.from, profile_symbol(pl), t.to});
    }
    out.adc.automaton.ts = TransitionSystem(profile_alphabet(*out.adc.base), q, std::move(trans));
    out.adc.automaton.initial = profile.initial;
    out.adc.automaton.final = profile.final;
    for (const auto& k : state_constraints) {
        if (k.a >= q || (k.kind == Constraint::Kind::Denial && k.b >= q))
            throw ProfileError("state constraint mentions an unknown state");
        switch (k.kind) {
        case Constraint::Kind::Key:
            for (Symbol a = 0; a < n; ++a)
                out.adc.constraints.add(Constraint::key(out.letter(k.a, a)));
            for (Symbol a = 0; a < n; ++a)
                for (Symbol b = a + 1; b < n; ++b)
                    out.adc.constraints.add(Constraint::denial(out.letter(k.a, a), out.letter(k.a, b)));
            break;
        case Constraint::Kind::Inclusion: {
            std::vector<Symbol> targets;
            for (State p : k.targets) {
                if (p >= q)
                    throw ProfileError("state constraint mentions an unknown state");
                for (Symbol b = 0; b < n; ++b)
                    targets.push_back(out.letter(p, b));
            }
            for (Symbol a = 0; a < n; ++a)
                out.adc.constraints.add(Constraint::inclusion(out.letter(k.a, a), targets));
            break;
        }
        case Constraint::Kind::Denial:
            for (Symbol a = 0; a < n; ++a)
                for (Symbol b = 0; b < n; ++b)
                    out.adc.constraints.add(Constraint::denial(out.letter(k.a, a), out.letter(k.b, b)));
            break;
        }
    }
    return out;
}

DataWord rearrange_locally_different(const DataWord& w, std::size_t alphabet_size) {
    std::map<Symbol, std::map<DataValue, std::size_t>> left;
    for (const auto& l : w)
        left[l.symbol][l.value]++;
    for (const auto& [a, vals] : left)
        if (vals.size() < alphabet_size + 3)
            throw ProfileError("letter has fewer than |alphabet| + 3 distinct values");
    DataWord out = w;
    std::size_t budget = 1000000;
    // Greedy choice order (largest remaining multiplicity, then smallest value) with
    // backtracking when the greedy path gets stuck.
    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == w.size())
            return true;
        if (budget-- == 0)
            return false;
        auto& pool = left[w[i].symbol];
        std::vector<std::pair<std::size_t, DataValue>> order;
        for (auto [v, c] : pool)
            if (c > 0 && (i == 0 || out[i - 1].value != v))
                order.emplace_back(c, v);
        std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
            return x.first != y.first ? x.first > y.first : x.second < y.second;
        });
        for (auto [c, v] : order) {
            (void)c;
            pool[v]--;
            out[i].value = v;
            if (place(i + 1))
                return true;
            pool[v]++;
        }
        return false;
    };
    if (!place(0))
        throw std::runtime_error("no locally different rearrangement found");
    return out;
}

Verdict zonal_nonempty(const BuchiAutomaton& zonal, const ConstraintSet& c, std::size_t base_size,
                       const SearchOptions& opts) {
    if (!buchi_nonempty(zonal)) {
        Verdict v;
        v.procedure = "zonal-empty";
        return v;
    }
    EngineConfig cfg;
    cfg.mode = GuessMode::FourWay;
    cfg.dataMask = zonal_set_mask(base_size);
    cfg.finiteData = true;
    Adc adc{zonal, c};
    auto v = engine_nonempty(adc, cfg, opts, false);
    if (v.nonEmpty) {
        v.procedure = "zonal-finite";
        return v;
    }
    cfg.finiteData = false;
    auto w = engine_nonempty(adc, cfg, opts, false);
    w.procedure = "zonal-infinite";
    return w;
}

Verdict profile_adc_nonempty(const ProfileAdc& p, const SearchOptions& opts) {
    const std::size_t n = p.base->size();
    auto zc = translate_constraints_zonal(p.constraints, n);
    auto za = zonal_automaton(p.automaton, *p.base, zc.onceFlags);
    return zonal_nonempty(za, zc.constraints, n, opts);
}

ProfileReplay replay_profile_witness(const ProfileAdc& p, const WitnessRecipe& r, std::size_t n) {
    const std::size_t k = p.base->size();
    ProfileReplay out;
    auto zc = translate_constraints_zonal(p.constraints, k);
    Adc zadc{zonal_automaton(p.automaton, *p.base, zc.onceFlags), zc.constraints};
    auto rep = verify_witness_prefix(r, n, zadc);
    out.zonalVerified = rep.ok;
    if (!rep.ok)
        out.failure = "zonal witness: " + rep.failure;

    // symbolic profile of the projected zonal lasso
    auto pre = r.projected_prefix();
    auto cyc = r.projected_cycle();
    std::vector<Symbol> seq = pre;
    for (int i = 0; i < 3; ++i)
        seq.insert(seq.end(), cyc.begin(), cyc.end());
    const std::size_t cut = pre.size() + cyc.size();
    bool any_plain = false;
    for (std::size_t i = 0; i < cut + cyc.size(); ++i) {
        if (seq[i] >= k)
            continue;
        Flag left = !any_plain ? Flag::Star : (seq[i - 1] >= k ? Flag::Diff : Flag::Same);
        Flag right = seq[i + 1] >= k ? Flag::Diff : Flag::Same;
        any_plain = true;
        (i < cut ? out.profile.prefix : out.profile.cycle).push_back({seq[i], left, right});
    }
    if (out.profile.cycle.empty()) {
        if (out.failure.empty())
            out.failure = "cycle carries no base letter";
        return out;
    }
    out.profileAccepted =
        accepts_lasso(p.automaton, profile_symbols(out.profile.prefix), profile_symbols(out.profile.cycle));
    if (!out.profileAccepted && out.failure.empty())
        out.failure = "profile lasso rejected";

    // concrete data word: base letters take the value of their zone's set letter
    std::optional<DataValue> cur;
    for (const auto& l : rep.prefix) {
        if (l.symbol >= k) {
            cur = l.value;
        } else {
            if (!cur) {
                if (out.failure.empty())
                    out.failure = "base letter before the first set letter";
                return out;
            }
            out.prefix.push_back({l.symbol, *cur});
        }
    }
    auto concrete = profile_of(out.prefix);
    out.flagsMatch = true;
    for (std::size_t i = 0; i < concrete.size(); ++i) {
        const auto& want = i < out.profile.prefix.size()
                               ? out.profile.prefix[i]
                               : out.profile.cycle[(i - out.profile.prefix.size()) % out.profile.cycle.size()];
        bool same = concrete[i].symbol == want.symbol && concrete[i].left == want.left &&
                    (i + 1 == concrete.size() || concrete[i].right == want.right);
        if (!same) {
            out.flagsMatch = false;
            if (out.failure.empty())
                out.failure = "profile flags differ at position " + std::to_string(i + 1);
            break;
        }
    }
    auto checks = check_constraints(out.prefix, p.constraints);
    out.keysAndDenials = true;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        if (p.constraints.items()[i].kind != Constraint::Kind::Inclusion && !checks[i].holds) {
            out.keysAndDenials = false;
            if (out.failure.empty())
                out.failure = p.constraints.describe(p.constraints.items()[i], *p.base) + " violated";
        }
    }
    out.ok = out.zonalVerified && out.profileAccepted && out.flagsMatch && out.keysAndDenials;
    return out;
}

} // namespace dw
