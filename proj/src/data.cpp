// SPDX-License-Identifier: Apache-2.0
#include "dw/data.hpp"

#include <algorithm>

namespace dw {

DataWord LassoDataWord::unroll(std::size_t copies) const {
    DataWord w(prefix);
    for (std::size_t i = 0; i < copies; ++i)
        w.insert(w.end(), cycle.begin(), cycle.end());
    return w;
}

DataWord LassoDataWord::take(std::size_t n) const {
    DataWord w;
    for (std::size_t i = 0; i < n; ++i) {
        if (i < prefix.size())
            w.push_back(prefix[i]);
        else if (!cycle.empty())
            w.push_back(cycle[(i - prefix.size()) % cycle.size()]);
        else
            break;
    }
    return w;
}

Constraint Constraint::inclusion(Symbol a, std::vector<Symbol> r) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return {Kind::Inclusion, a, 0, std::move(r)};
}

Mask Constraint::target_mask() const {
    Mask m = 0;
    for (Symbol s : targets) {
        if (s >= 64)
            throw std::out_of_range("target symbol does not fit a mask");
        m |= bit(s);
    }
    return m;
}

ConstraintSet::ConstraintSet(std::initializer_list<Constraint> cs) {
    for (const auto& c : cs)
        add(c);
}

ConstraintSet::ConstraintSet(const std::vector<Constraint>& cs) {
    for (const auto& c : cs)
        add(c);
}

void ConstraintSet::add(Constraint c) {
    if (c.kind == Constraint::Kind::Inclusion)
        c = Constraint::inclusion(c.a, c.targets);
    if (c.kind == Constraint::Kind::Denial && c.b < c.a)
        std::swap(c.a, c.b);
    if (std::find(items_.begin(), items_.end(), c) == items_.end())
        items_.push_back(std::move(c));
}

bool ConstraintSet::has_key() const {
    return std::any_of(items_.begin(), items_.end(), [](const Constraint& c) { return c.kind == Constraint::Kind::Key; });
}

Mask ConstraintSet::key_mask() const {
    Mask m = 0;
    for (const auto& c : items_)
        if (c.kind == Constraint::Kind::Key)
            m |= bit(c.a);
    return m;
}

std::string ConstraintSet::describe(const Constraint& c, const Alphabet& alpha) const {
    switch (c.kind) {
    case Constraint::Kind::Key:
        return "key(" + alpha.name(c.a) + ")";
    case Constraint::Kind::Denial:
        return "denial(" + alpha.name(c.a) + "," + alpha.name(c.b) + ")";
    case Constraint::Kind::Inclusion: {
        std::string s = "inclusion(" + alpha.name(c.a) + ",{";
        for (std::size_t i = 0; i < c.targets.size(); ++i)
            s += (i ? "," : "") + alpha.name(c.targets[i]);
        return s + "})";
    }
    }
    return {};
}

std::set<DataValue> values_of(const DataWord& w, Symbol a) {
    std::set<DataValue> out;
    for (const auto& l : w)
        if (l.symbol == a)
            out.insert(l.value);
    return out;
}

std::set<DataValue> values_of(const LassoDataWord& w, Symbol a) { return values_of(w.unroll(1), a); }

std::map<Mask, std::set<DataValue>> class_sets(const DataWord& w) {
    std::map<DataValue, Mask> labels;
    for (const auto& l : w)
        labels[l.value] |= bit(l.symbol);
    std::map<Mask, std::set<DataValue>> out;
    for (auto [v, m] : labels)
        out[m].insert(v);
    return out;
}

std::map<Mask, std::set<DataValue>> class_sets(const LassoDataWord& w) { return class_sets(w.unroll(1)); }

std::vector<ConstraintCheck> check_constraints(const DataWord& w, const ConstraintSet& c) {
    std::vector<ConstraintCheck> out;
    for (const auto& k : c) {
        ConstraintCheck r;
        switch (k.kind) {
        case Constraint::Kind::Key:
            for (std::size_t i = 0; i < w.size() && r.holds; ++i) {
                if (w[i].symbol != k.a)
                    continue;
                for (std::size_t j = i + 1; j < w.size(); ++j) {
                    if (w[j].symbol == k.a && w[j].value == w[i].value) {
                        r = {false, i + 1, j + 1};
                        break;
                    }
                }
            }
            break;
        case Constraint::Kind::Inclusion: {
            std::set<DataValue> cover;
            for (const auto& l : w)
                if (std::binary_search(k.targets.begin(), k.targets.end(), l.symbol))
                    cover.insert(l.value);
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i].symbol == k.a && !cover.count(w[i].value)) {
                    r.holds = false;
                    r.first = i + 1;
                    break;
                }
            }
            break;
        }
        case Constraint::Kind::Denial:
            for (std::size_t i = 0; i < w.size() && r.holds; ++i) {
                if (w[i].symbol != k.a && w[i].symbol != k.b)
                    continue;
                Symbol other = w[i].symbol == k.a ? k.b : k.a;
                std::size_t from = k.a == k.b ? i : i + 1;
                for (std::size_t j = from; j < w.size(); ++j) {
                    if (w[j].symbol == other && w[j].value == w[i].value) {
                        r = {false, i + 1, j + 1};
                        break;
                    }
                }
            }
            break;
        }
        out.push_back(r);
    }
    return out;
}

// Two unrollings suffice: every violating pair has a lexicographically smaller or equal
// representative within prefix + 2 cycle copies.
std::vector<ConstraintCheck> check_constraints(const LassoDataWord& w, const ConstraintSet& c) {
    return check_constraints(w.unroll(2), c);
}

bool satisfies(const DataWord& w, const ConstraintSet& c) {
    auto r = check_constraints(w, c);
    return std::all_of(r.begin(), r.end(), [](const ConstraintCheck& x) { return x.holds; });
}

bool satisfies(const LassoDataWord& w, const ConstraintSet& c) {
    auto r = check_constraints(w, c);
    return std::all_of(r.begin(), r.end(), [](const ConstraintCheck& x) { return x.holds; });
}

bool forced_empty(Mask s, const ConstraintSet& c) {
    for (const auto& k : c) {
        if (k.kind == Constraint::Kind::Inclusion && (s & bit(k.a)) && (s & k.target_mask()) == 0)
            return true;
        if (k.kind == Constraint::Kind::Denial && (s & bit(k.a)) && (s & bit(k.b)))
            return true;
    }
    return false;
}

std::vector<Mask> s_zero_of(const ConstraintSet& c, std::size_t alphabet_size) {
    if (alphabet_size >= 32)
        throw std::out_of_range("alphabet too large for subset enumeration");
    std::vector<Mask> out;
    for (Mask s = 1; s < (Mask{1} << alphabet_size); ++s)
        if (forced_empty(s, c))
            out.push_back(s);
    return out;
}

Symbol fo2_letter(std::size_t k, Symbol letter, std::uint64_t bits) {
    return static_cast<Symbol>((static_cast<std::uint64_t>(letter) << k) | bits);
}

namespace {

std::vector<Symbol> consistent_letters(const ClauseGuard& g, std::size_t base, std::size_t k) {
    for (auto [i, pos] : g.predicates) {
        (void)pos;
        if (i >= k)
            throw ClauseError("predicate index " + std::to_string(i) + " exceeds predicate count");
    }
    if (g.letter && *g.letter >= base)
        throw ClauseError("guard letter outside the base alphabet");
    std::vector<Symbol> out;
    for (Symbol a = 0; a < base; ++a) {
        if (g.letter && *g.letter != a)
            continue;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
            bool ok = true;
            for (auto [i, pos] : g.predicates)
                ok = ok && (((bits >> i) & 1u) == (pos ? 1u : 0u));
            if (ok)
                out.push_back(fo2_letter(k, a, bits));
        }
    }
    return out;
}

} // namespace

Fo2Encoding encode_fo2_clauses(const AlphabetPtr& base, std::size_t k, const std::vector<Fo2Clause>& clauses) {
    if (k >= 20)
        throw ClauseError("predicate count too large");
    std::vector<std::string> names;
    for (Symbol a = 0; a < base->size(); ++a) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
            std::string b;
            for (std::size_t i = 0; i < k; ++i)
                b += ((bits >> i) & 1u) ? '1' : '0';
            names.push_back(k == 0 ? base->name(a) : "(" + base->name(a) + "," + b + ")");
        }
    }
    Fo2Encoding enc;
    enc.alphabet = make_alphabet(names);
    for (const auto& cl : clauses) {
        auto lhs = consistent_letters(cl.guard, base->size(), k);
        if (cl.kind == Fo2Clause::Kind::Unique) {
            for (Symbol a : lhs)
                enc.constraints.add(Constraint::key(a));
            for (std::size_t i = 0; i < lhs.size(); ++i)
                for (std::size_t j = i + 1; j < lhs.size(); ++j)
                    enc.constraints.add(Constraint::denial(lhs[i], lhs[j]));
        } else {
            auto rhs = consistent_letters(cl.target, base->size(), k);
            for (Symbol a : lhs)
                enc.constraints.add(Constraint::inclusion(a, rhs));
        }
    }
    return enc;
}

} // namespace dw
