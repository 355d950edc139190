// SPDX-License-Identifier: Apache-2.0
// Tableau for LTL with data diamonds, and its lowering to (profile) ADCs.
#include "dw/ltl.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace dw {

using Op = Formula::Op;

namespace {

enum class Mode { Plain, Weak, Strong, Profile };

enum class NextFlag : std::uint8_t { None, Same, Diff };

struct Node {
    Op op = Op::True;
    Symbol atom = 0;
    std::uint32_t l = 0, r = 0;
    FormulaPtr f;
};

// Local state: the set of closure members that hold, plus the guessed equality with the
// next value (profile mode) and one bar bit per strong diamond.
struct LocalState {
    Mask truth = 0;
    Symbol label = 0;
    NextFlag flag = NextFlag::None;
    Mask bars = 0;
};

class Tableau {
public:
    Tableau(const FormulaPtr& f, const AlphabetPtr& alphabet, Mode mode) : alpha_(alphabet), mode_(mode) {
        if (!alphabet || alphabet->size() == 0)
            throw InputError("formula alphabet is empty");
        for (const auto& a : atoms_of(*f))
            if (!alphabet->find(a))
                throw InputError("atom '" + a + "' is not in the alphabet");
        formula_ = normal_form(f);
        cl_ = closure(formula_, *alphabet);
        for (const auto& g : cl_)
            intern(g);
        root_ = index_.at(formula_);
        for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
            const auto op = nodes_[i].op;
            if (op == Op::DiamondW || op == Op::DiamondS)
                diamonds_.push_back(i);
            if (op == Op::Until)
                untils_.push_back(i);
            if (op == Op::Next || op == Op::NextSame || op == Op::NextDiff || op == Op::Until || op == Op::Release ||
                op == Op::DiamondW || op == Op::DiamondS)
                elementary_.push_back(i);
        }
        // diamonds are named in closure order
        std::sort(diamonds_.begin(), diamonds_.end(),
                  [&](std::uint32_t x, std::uint32_t y) { return FormulaLess{}(nodes_[x].f, nodes_[y].f); });
        for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
            auto n = normal_form(ltl::lnot(nodes_[i].f));
            auto it = index_.find(n);
            if (it != index_.end())
                negations_.emplace_back(i, it->second);
        }
        if (elementary_.size() > 20)
            throw InputError("formula has too many temporal subformulas for the tableau");
        enumerate_states();
    }

    [[nodiscard]] std::size_t closure_size() const { return nodes_.size(); }
    [[nodiscard]] const std::vector<LocalState>& states() const { return states_; }
    [[nodiscard]] std::size_t until_count() const { return untils_.size(); }

    [[nodiscard]] bool holds(const LocalState& s, std::uint32_t id) const { return (s.truth >> id) & 1u; }

    // Type digits as documented in the header.
    [[nodiscard]] std::string digits(const LocalState& s) const {
        std::string d;
        for (std::size_t k = 0; k < diamonds_.size(); ++k) {
            const std::uint32_t id = diamonds_[k];
            const bool arg = holds(s, nodes_[id].l), dia = holds(s, id);
            char c = static_cast<char>('0' + (arg ? 2 : 0) + (dia ? 1 : 0));
            if (arg && dia && ((s.bars >> k) & 1u))
                c = '4';
            d.push_back(c);
        }
        return d;
    }
    [[nodiscard]] const std::vector<std::uint32_t>& diamonds() const { return diamonds_; }
    [[nodiscard]] bool strong_diamond(std::size_t k) const { return nodes_[diamonds_[k]].op == Op::DiamondS; }

    // Generalized Büchi automaton: state 0 is the initial pseudo-state, state i + 1 is
    // states()[i]; `letter(from, to)` labels the edge into `to` (from = -1 for the start).
    template <typename LetterFn>
    GeneralizedBuchi automaton(const AlphabetPtr& letters, LetterFn letter) const {
        std::vector<Transition> trans;
        for (std::size_t j = 0; j < states_.size(); ++j)
            if (holds(states_[j], root_))
                trans.push_back({0, letter(-1, j), static_cast<State>(j + 1)});
        // successors grouped by the part of the truth set they are constrained on
        std::map<Mask, std::unordered_map<Mask, std::vector<std::uint32_t>>> groups;
        std::vector<std::pair<Mask, Mask>> need(states_.size());
        for (std::size_t i = 0; i < states_.size(); ++i) {
            need[i] = successor_constraint(states_[i]);
            groups[need[i].first];
        }
        for (auto& [care, bucket] : groups)
            for (std::uint32_t j = 0; j < states_.size(); ++j)
                bucket[states_[j].truth & care].push_back(j);
        for (std::size_t i = 0; i < states_.size(); ++i) {
            const auto& bucket = groups.at(need[i].first);
            auto it = bucket.find(need[i].second);
            if (it == bucket.end())
                continue;
            for (std::uint32_t j : it->second)
                trans.push_back({static_cast<State>(i + 1), letter(static_cast<long>(i), j), static_cast<State>(j + 1)});
        }
        GeneralizedBuchi g;
        g.ts = TransitionSystem(letters, states_.size() + 1, std::move(trans));
        g.initial = 0;
        for (std::uint32_t u : untils_) {
            std::vector<bool> set(states_.size() + 1, false);
            for (std::size_t j = 0; j < states_.size(); ++j)
                set[j + 1] = !holds(states_[j], u) || holds(states_[j], nodes_[u].r);
            g.sets.push_back(std::move(set));
        }
        return g;
    }

private:
    std::uint32_t intern(const FormulaPtr& g) {
        auto it = index_.find(g);
        if (it != index_.end())
            return it->second;
        Node n;
        n.op = g->op;
        n.f = g;
        if (g->left)
            n.l = intern(g->left);
        if (g->right)
            n.r = intern(g->right);
        if (g->op == Op::Atom)
            n.atom = alpha_->at(g->atom);
        const auto id = static_cast<std::uint32_t>(nodes_.size());
        if (id >= 64)
            throw InputError("formula closure exceeds 64 members");
        nodes_.push_back(n);
        index_.emplace(g, id);
        return id;
    }

    // Truth of every non-elementary member, given the label and the elementary guesses.
    [[nodiscard]] Mask complete(Symbol label, Mask elementary) const {
        Mask t = elementary;
        for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            bool v = false;
            switch (n.op) {
            case Op::True:
                v = true;
                break;
            case Op::False:
                v = false;
                break;
            case Op::Atom:
                v = n.atom == label;
                break;
            case Op::Not:
                v = !((t >> n.l) & 1u);
                break;
            case Op::And:
                v = ((t >> n.l) & 1u) && ((t >> n.r) & 1u);
                break;
            case Op::Or:
                v = ((t >> n.l) & 1u) || ((t >> n.r) & 1u);
                break;
            default:
                continue; // elementary
            }
            if (v)
                t |= bit(i);
            else
                t &= ~bit(i);
        }
        return t;
    }

    [[nodiscard]] bool locally_consistent(const LocalState& s) const {
        for (std::uint32_t i : elementary_) {
            const Node& n = nodes_[i];
            const bool v = holds(s, i);
            switch (n.op) {
            case Op::Until:
                if (holds(s, n.r) && !v)
                    return false;
                if (!holds(s, n.l) && !holds(s, n.r) && v)
                    return false;
                break;
            case Op::Release:
                if (!holds(s, n.r) && v)
                    return false;
                if (holds(s, n.l) && holds(s, n.r) && !v)
                    return false;
                break;
            case Op::DiamondW:
                if (holds(s, n.l) && !v)
                    return false;
                break;
            case Op::NextSame:
                if (v && s.flag != NextFlag::Same)
                    return false;
                break;
            case Op::NextDiff:
                if (v && s.flag != NextFlag::Diff)
                    return false;
                break;
            default:
                break;
            }
        }
        for (auto [x, y] : negations_)
            if (holds(s, x) && holds(s, y))
                return false;
        return true;
    }

    // Conditions on a closure state; a violation is a construction bug.
    void check_closure_state(const LocalState& s) const {
        auto fail = [](const char* what) { throw std::logic_error(std::string("tableau state violates ") + what); };
        Mask labels = 0;
        for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            if (!holds(s, i))
                continue;
            if (n.op == Op::False)
                fail("the False condition");
            if (n.op == Op::Atom)
                labels |= bit(n.atom);
            if (n.op == Op::And && !(holds(s, n.l) && holds(s, n.r)))
                fail("conjunction closure");
            if (n.op == Op::Or && !(holds(s, n.l) || holds(s, n.r)))
                fail("disjunction closure");
        }
        if (labels != bit(s.label))
            fail("the single-label condition");
        for (auto [x, y] : negations_)
            if (holds(s, x) && holds(s, y))
                fail("negation consistency");
    }

    void enumerate_states() {
        const std::size_t e = elementary_.size();
        for (Symbol a = 0; a < alpha_->size(); ++a) {
            for (std::uint64_t g = 0; g < (std::uint64_t{1} << e); ++g) {
                Mask el = 0;
                for (std::size_t k = 0; k < e; ++k)
                    if ((g >> k) & 1u)
                        el |= bit(elementary_[k]);
                const Mask truth = complete(a, el);
                std::vector<NextFlag> flags{NextFlag::None};
                if (mode_ == Mode::Profile)
                    flags = {NextFlag::Same, NextFlag::Diff};
                for (NextFlag fl : flags) {
                    LocalState s{truth, a, fl, 0};
                    if (!locally_consistent(s))
                        continue;
                    check_closure_state(s);
                    // bars: free on strong diamonds whose argument holds here
                    Mask free = 0;
                    if (mode_ != Mode::Weak)
                        for (std::size_t k = 0; k < diamonds_.size(); ++k)
                            if (strong_diamond(k) && holds(s, diamonds_[k]) && holds(s, nodes_[diamonds_[k]].l))
                                free |= bit(static_cast<Symbol>(k));
                    for (Mask b = free;; b = (b - 1) & free) {
                        s.bars = b;
                        states_.push_back(s);
                        if (b == 0)
                            break;
                    }
                }
            }
        }
    }

    // (care, value): a successor t must satisfy t.truth & care == value.
    [[nodiscard]] std::pair<Mask, Mask> successor_constraint(const LocalState& s) const {
        Mask care = 0, value = 0;
        auto want = [&](std::uint32_t id, bool v) {
            care |= bit(id);
            if (v)
                value |= bit(id);
        };
        for (std::uint32_t i : elementary_) {
            const Node& n = nodes_[i];
            const bool v = holds(s, i);
            switch (n.op) {
            case Op::Next:
                want(n.l, v);
                break;
            case Op::NextSame:
                if (s.flag == NextFlag::Same)
                    want(n.l, v);
                break;
            case Op::NextDiff:
                if (s.flag == NextFlag::Diff)
                    want(n.l, v);
                break;
            case Op::Until:
                if (!holds(s, n.r) && holds(s, n.l))
                    want(i, v);
                break;
            case Op::Release:
                if (holds(s, n.r) && !holds(s, n.l))
                    want(i, v);
                break;
            default:
                break;
            }
        }
        return {care, value};
    }

    AlphabetPtr alpha_;
    Mode mode_;
    FormulaPtr formula_;
    std::vector<FormulaPtr> cl_;
    std::vector<Node> nodes_;
    std::map<FormulaPtr, std::uint32_t, FormulaLess> index_;
    std::uint32_t root_ = 0;
    std::vector<std::uint32_t> diamonds_, untils_, elementary_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> negations_;
    std::vector<LocalState> states_;
};

void fill_stats(const Tableau& t, TableauStats* stats) {
    if (!stats)
        return;
    stats->closureSize = t.closure_size();
    stats->states = t.states().size();
    stats->untilSets = t.until_count();
}

// Keeps the transitions on accepting runs and renumbers the letters that remain.
// `keep_letter` maps an old symbol to the new one (or nullopt when unused).
BuchiAutomaton restrict_letters(const BuchiAutomaton& a, const AlphabetPtr& letters,
                                const std::vector<std::optional<Symbol>>& remap) {
    auto reach = reachable_from(a.ts, a.initial);
    std::uint32_t ncomp = 0;
    auto comp = scc_ids(a.ts, &ncomp);
    std::vector<bool> nontrivial(ncomp, false), has_final(ncomp, false);
    for (const auto& t : a.ts.transitions())
        if (comp[t.from] == comp[t.to])
            nontrivial[comp[t.from]] = true;
    for (State q = 0; q < a.ts.state_count(); ++q)
        if (a.final[q])
            has_final[comp[q]] = true;
    std::vector<bool> good(a.ts.state_count(), false);
    for (State q = 0; q < a.ts.state_count(); ++q)
        good[q] = nontrivial[comp[q]] && has_final[comp[q]];
    auto live = coreachable_to(a.ts, good);
    std::vector<Transition> trans;
    for (const auto& t : a.ts.transitions())
        if (reach[t.from] && live[t.to] && remap[t.symbol])
            trans.push_back({t.from, *remap[t.symbol], t.to});
    BuchiAutomaton r;
    r.ts = TransitionSystem(letters, a.ts.state_count(), std::move(trans));
    r.initial = a.initial;
    r.final = a.final;
    return trim_reachable(r);
}

struct TypeKey {
    Symbol label;
    std::string digits;
    auto operator<=>(const TypeKey&) const = default;
};

// Shared part of the weak, strong and profile translations: the type letters that occur on
// accepting runs and the data constraints over them.
struct Typed {
    std::vector<TypeKey> types; // indexed by type letter
    LtlLetters letters;
    ConstraintSet constraints;
};

Typed build_types(const Tableau& t, const AlphabetPtr& alphabet, const std::vector<bool>& used,
                  const std::vector<TypeKey>& all) {
    Typed out;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!used[i])
            continue;
        out.types.push_back(all[i]);
        const auto& name = alphabet->name(all[i].label);
        names.push_back(all[i].digits.empty() ? name : name + ":" + all[i].digits);
        out.letters.label.push_back(all[i].label);
        out.letters.digits.push_back(all[i].digits);
    }
    if (out.types.size() > 64)
        throw InputError("translation needs more than 64 type letters");
    out.letters.alphabet = make_alphabet(names);
    const auto n = static_cast<Symbol>(out.types.size());
    for (std::size_t k = 0; k < t.diamonds().size(); ++k) {
        auto code = [&](Symbol x) { return out.types[x].digits[k]; };
        auto with_arg = [&](auto pred) {
            std::vector<Symbol> r;
            for (Symbol y = 0; y < n; ++y)
                if (pred(code(y)))
                    r.push_back(y);
            return r;
        };
        const auto arg_true = with_arg([](char c) { return c >= '2'; });
        for (Symbol x = 0; x < n; ++x) {
            const char c = code(x);
            if (c == '1') {
                out.constraints.add(Constraint::inclusion(x, arg_true));
            } else if (c == '0') {
                for (Symbol y : arg_true)
                    out.constraints.add(Constraint::denial(x, y));
            } else if (t.strong_diamond(k) && c == '2') {
                // the only psi-position carrying its value
                out.constraints.add(Constraint::key(x));
                for (Symbol y : arg_true)
                    if (y != x)
                        out.constraints.add(Constraint::denial(x, y));
            } else if (t.strong_diamond(k) && (c == '3' || c == '4')) {
                // another psi-position shares the value: it carries the opposite bar
                const char other = c == '3' ? '4' : '3';
                out.constraints.add(Constraint::inclusion(x, with_arg([&](char d) { return d == other; })));
            }
        }
    }
    return out;
}

LtlTranslation translate_adc(const FormulaPtr& f, const AlphabetPtr& alphabet, Mode mode, TableauStats* stats) {
    Tableau t(f, alphabet, mode);
    fill_stats(t, stats);
    // every local state's type, interned in sorted order
    std::map<TypeKey, Symbol> ids;
    std::vector<Symbol> type_of(t.states().size());
    for (const auto& s : t.states())
        ids.emplace(TypeKey{s.label, t.digits(s)}, 0);
    std::vector<TypeKey> all;
    for (auto& [k, v] : ids) {
        v = static_cast<Symbol>(all.size());
        all.push_back(k);
    }
    std::vector<std::string> raw_names;
    for (const auto& k : all)
        raw_names.push_back(alphabet->name(k.label) + ":" + k.digits);
    auto raw = make_alphabet(raw_names);
    for (std::size_t i = 0; i < t.states().size(); ++i)
        type_of[i] = ids.at(TypeKey{t.states()[i].label, t.digits(t.states()[i])});
    auto g = t.automaton(raw, [&](long, std::size_t to) { return type_of[to]; });
    auto b = degeneralize(g);
    auto use = letter_use(b);
    Typed typed = build_types(t, alphabet, use.occurs, all);
    std::vector<std::optional<Symbol>> remap(all.size());
    Symbol next = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (use.occurs[i])
            remap[i] = next++;
    LtlTranslation out;
    out.adc.automaton = restrict_letters(b, typed.letters.alphabet, remap);
    out.adc.constraints = std::move(typed.constraints);
    out.letters = std::move(typed.letters);
    return out;
}

} // namespace

BuchiAutomaton plain_tableau(const FormulaPtr& f, const AlphabetPtr& alphabet, TableauStats* stats) {
    if (fragment_of(*f) != Fragment::Plain)
        throw FragmentError("plain tableau needs a formula without data operators");
    Tableau t(f, alphabet, Mode::Plain);
    fill_stats(t, stats);
    auto g = t.automaton(alphabet, [&](long, std::size_t to) { return t.states()[to].label; });
    return degeneralize(g);
}

LtlTranslation translate_weak(const FormulaPtr& f, const AlphabetPtr& alphabet, TableauStats* stats) {
    auto fr = fragment_of(*f);
    if (fr != Fragment::WeakOnly && fr != Fragment::Plain)
        throw FragmentError("translate_weak needs a formula whose only data operator is Dw");
    return translate_adc(f, alphabet, Mode::Weak, stats);
}

LtlTranslation translate_strong(const FormulaPtr& f, const AlphabetPtr& alphabet, TableauStats* stats) {
    if (fragment_of(*f) == Fragment::StrongWithProfiles)
        throw FragmentError("translate_strong does not handle Xs or Xd");
    return translate_adc(f, alphabet, Mode::Strong, stats);
}

LtlProfileTranslation translate_full(const FormulaPtr& f, const AlphabetPtr& alphabet, TableauStats* stats) {
    Tableau t(f, alphabet, Mode::Profile);
    fill_stats(t, stats);
    std::map<TypeKey, Symbol> ids;
    for (const auto& s : t.states())
        ids.emplace(TypeKey{s.label, t.digits(s)}, 0);
    std::vector<TypeKey> all;
    std::vector<std::string> raw_names;
    for (auto& [k, v] : ids) {
        v = static_cast<Symbol>(all.size());
        all.push_back(k);
        raw_names.push_back(alphabet->name(k.label) + ":" + k.digits);
    }
    auto raw_base = make_alphabet(raw_names);
    auto raw = profile_alphabet(*raw_base);
    auto flag_of = [&](long i) {
        if (i < 0)
            return Flag::Star;
        return t.states()[static_cast<std::size_t>(i)].flag == NextFlag::Same ? Flag::Same : Flag::Diff;
    };
    auto g = t.automaton(raw, [&](long from, std::size_t to) {
        const auto& s = t.states()[to];
        return profile_symbol({ids.at(TypeKey{s.label, t.digits(s)}), flag_of(from), flag_of(static_cast<long>(to))});
    });
    auto b = degeneralize(g);
    auto use = letter_use(b);
    std::vector<bool> used(all.size(), false);
    for (Symbol s = 0; s < use.occurs.size(); ++s)
        if (use.occurs[s])
            used[profile_letter(s).symbol] = true;
    Typed typed = build_types(t, alphabet, used, all);
    std::vector<Symbol> base_remap(all.size(), 0);
    Symbol next = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (used[i])
            base_remap[i] = next++;
    std::vector<std::optional<Symbol>> remap(raw->size());
    for (Symbol s = 0; s < raw->size(); ++s) {
        auto pl = profile_letter(s);
        if (used[pl.symbol])
            remap[s] = profile_symbol({base_remap[pl.symbol], pl.left, pl.right});
    }
    LtlProfileTranslation out;
    out.adc.base = typed.letters.alphabet;
    out.adc.automaton = restrict_letters(b, profile_alphabet(*typed.letters.alphabet), remap);
    out.adc.constraints = std::move(typed.constraints);
    out.letters = std::move(typed.letters);
    return out;
}

DataWord erase_types(const DataWord& w, const LtlLetters& letters) {
    DataWord out;
    out.reserve(w.size());
    for (const auto& l : w)
        out.push_back({letters.label.at(l.symbol), l.value});
    return out;
}

namespace {

// A concretized prefix covering stem + 4 cycle copies is read as a lasso when the last
// three copies carry identical letters and values.
std::optional<LassoDataWord> periodic_lasso(const DataWord& w, std::size_t stem, std::size_t cycle) {
    if (cycle == 0 || w.size() < stem + 4 * cycle)
        return std::nullopt;
    for (std::size_t k = 0; k < cycle; ++k) {
        const auto& a = w[stem + cycle + k];
        if (!(a == w[stem + 2 * cycle + k]) || !(a == w[stem + 3 * cycle + k]))
            return std::nullopt;
    }
    LassoDataWord l;
    l.prefix.assign(w.begin(), w.begin() + static_cast<long>(stem + cycle));
    l.cycle.assign(w.begin() + static_cast<long>(stem + cycle), w.begin() + static_cast<long>(stem + 2 * cycle));
    return l;
}

} // namespace

LtlVerdict ltl_sat(const FormulaPtr& f, const AlphabetPtr& alphabet, const SearchOptions& opts,
                   std::size_t prefix_length) {
    LtlVerdict out;
    auto cut = [&](DataWord w, std::size_t fallback) {
        w.resize(std::min(w.size(), prefix_length ? prefix_length : fallback));
        return w;
    };
    out.fragment = fragment_of(*f);
    auto confirm = [&](std::optional<LassoDataWord> l) {
        if (l && evaluate(*l, *alphabet, 1, *f))
            out.lasso = std::move(l);
    };
    switch (out.fragment) {
    case Fragment::Plain: {
        auto a = plain_tableau(f, alphabet, &out.tableau);
        out.procedure = "buchi";
        auto l = buchi_nonempty(a);
        out.inner.nonEmpty = l.has_value();
        out.inner.procedure = "buchi";
        if (!l)
            return out;
        out.satisfiable = true;
        out.replayOk = accepts_lasso(a, l->prefixWord, l->cycleWord);
        LassoDataWord w;
        for (Symbol s : l->prefixWord)
            w.prefix.push_back({s, 1});
        for (Symbol s : l->cycleWord)
            w.cycle.push_back({s, 1});
        out.prefix = w.take(prefix_length ? prefix_length : w.prefix.size() + 3 * w.cycle.size());
        confirm(w);
        return out;
    }
    case Fragment::WeakOnly:
    case Fragment::StrongOnly: {
        const bool weak = out.fragment == Fragment::WeakOnly;
        auto tr = weak ? translate_weak(f, alphabet, &out.tableau) : translate_strong(f, alphabet, &out.tableau);
        out.inner = weak ? adc_nonempty_keyfree(tr.adc, opts) : adc_nonempty(tr.adc, opts);
        out.procedure = std::string(weak ? "weak" : "strong") + "/" + out.inner.procedure;
        out.satisfiable = out.inner.nonEmpty;
        if (!out.satisfiable)
            return out;
        const auto& r = *out.inner.witness;
        out.replayOk = verify_witness_prefix(r, 3 * r.length(), tr.adc).ok;
        const std::size_t stem = r.u.size() + r.vPrefix.size(), cyc = r.vCycle.size();
        if (auto pre = concretize(r, std::max(stem + 4 * cyc, prefix_length ? prefix_length : 3 * r.length()),
                                  tr.adc.constraints)) {
            auto word = erase_types(*pre, tr.letters);
            confirm(periodic_lasso(word, stem, cyc));
            out.prefix = cut(std::move(word), r.length() * 3);
        }
        return out;
    }
    case Fragment::StrongWithProfiles: {
        auto tr = translate_full(f, alphabet, &out.tableau);
        out.inner = profile_adc_nonempty(tr.adc, opts);
        out.procedure = "profile/" + out.inner.procedure;
        out.satisfiable = out.inner.nonEmpty;
        if (!out.satisfiable)
            return out;
        const auto& r = *out.inner.witness;
        // zonal positions: only plain letters become data positions
        const std::size_t base = tr.adc.base->size();
        auto plain = [&](const std::vector<Symbol>& w) {
            return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [&](Symbol s) { return s < base; }));
        };
        const auto pp = r.projected_prefix(), pc = r.projected_cycle();
        const std::size_t stem = plain(pp), cyc = plain(pc);
        // zonal positions per data position is at most two, so 2n zonal positions cover n
        auto rep = replay_profile_witness(tr.adc, r, std::max(3 * (pp.size() + pc.size()), 2 * prefix_length) + 4 * pc.size());
        out.replayOk = rep.ok;
        auto word = erase_types(rep.prefix, tr.letters);
        confirm(periodic_lasso(word, stem, cyc));
        out.prefix = cut(std::move(word), 3 * (stem + cyc));
        return out;
    }
    }
    return out;
}

} // namespace dw
