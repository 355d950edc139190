// SPDX-License-Identifier: Apache-2.0
#include "dw/cli.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace dw::cli {

namespace {

struct ModeName {
    Mode mode;
    const char* name;
};

constexpr ModeName kModes[] = {{Mode::Adc, "adc"},
                               {Mode::AdcKeyfree, "adc-keyfree"},
                               {Mode::ProfileAdc, "profile-adc"},
                               {Mode::Zonal, "zonal"},
                               {Mode::LocallyDifferent, "locally-different"},
                               {Mode::Ltl, "ltl"},
                               {Mode::Presburger, "presburger"}};

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const Json& field(const Json& obj, const std::string& ptr, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError(ptr, std::string("missing field '") + key + "'");
    return *it;
}

std::uint64_t as_count(const Json& j, const std::string& ptr) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw SchemaError(ptr, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

const std::string& as_string(const Json& j, const std::string& ptr) {
    if (!j.is_string())
        throw SchemaError(ptr, "expected a string");
    return j.get_ref<const std::string&>();
}

const Json& as_array(const Json& j, const std::string& ptr) {
    if (!j.is_array())
        throw SchemaError(ptr, "expected an array");
    return j;
}

Symbol symbol_of(const Alphabet& al, const Json& j, const std::string& ptr) {
    const auto& s = as_string(j, ptr);
    auto sym = al.find(s);
    if (!sym)
        throw SchemaError(ptr, "unknown letter '" + s + "'");
    return *sym;
}

AlphabetPtr load_alphabet(const Json& doc) {
    const auto& arr = as_array(field(doc, "", "alphabet"), "/alphabet");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& s = as_string(arr[i], child("/alphabet", i));
        if (!seen.insert(s).second)
            throw SchemaError(child("/alphabet", i), "duplicate letter '" + s + "'");
        names.push_back(s);
    }
    return make_alphabet(std::move(names));
}

void load_automaton(const Json& j, const AlphabetPtr& letters, bool nfa, Problem& p) {
    const std::string ptr = "/automaton";
    if (!j.is_object())
        throw SchemaError(ptr, "expected an object");
    const auto states = as_count(field(j, ptr, "states"), child(ptr, "states"));
    if (states == 0 || states > (1u << 24))
        throw SchemaError(child(ptr, "states"), "state count out of range");
    const auto initial = as_count(field(j, ptr, "initial"), child(ptr, "initial"));
    if (initial >= states)
        throw SchemaError(child(ptr, "initial"), "initial state out of range");
    const char* fkey = j.contains("finals") ? "finals" : "buchiFinals";
    const auto& finals = as_array(field(j, ptr, fkey), child(ptr, fkey));
    std::vector<bool> fin(states, false);
    for (std::size_t i = 0; i < finals.size(); ++i) {
        const auto q = as_count(finals[i], child(child(ptr, fkey), i));
        if (q >= states)
            throw SchemaError(child(child(ptr, fkey), i), "state out of range");
        fin[q] = true;
    }
    const auto& trans = as_array(field(j, ptr, "transitions"), child(ptr, "transitions"));
    std::vector<Transition> ts;
    for (std::size_t i = 0; i < trans.size(); ++i) {
        const std::string tp = child(child(ptr, "transitions"), i);
        const auto& t = as_array(trans[i], tp);
        if (t.size() != 3)
            throw SchemaError(tp, "expected [from, letter, to]");
        const auto from = as_count(t[0], child(tp, 0)), to = as_count(t[2], child(tp, 2));
        if (from >= states)
            throw SchemaError(child(tp, 0), "state out of range");
        if (to >= states)
            throw SchemaError(child(tp, 2), "state out of range");
        ts.push_back({static_cast<State>(from), symbol_of(*letters, t[1], child(tp, 1)), static_cast<State>(to)});
    }
    p.automaton.ts = TransitionSystem(letters, states, std::move(ts));
    p.automaton.initial = static_cast<State>(initial);
    if (nfa) {
        p.nfaFinals = fin;
        p.automaton.final.assign(states, false);
    } else {
        p.automaton.final = fin;
    }
}

ConstraintSet load_constraints(const Json& doc, const Alphabet& letters) {
    ConstraintSet out;
    auto it = doc.find("constraints");
    if (it == doc.end())
        return out;
    const auto& arr = as_array(*it, "/constraints");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ptr = child("/constraints", i);
        const auto& c = arr[i];
        if (!c.is_object())
            throw SchemaError(ptr, "expected an object");
        const auto& kind = as_string(field(c, ptr, "kind"), child(ptr, "kind"));
        if (kind == "key") {
            out.add(Constraint::key(symbol_of(letters, field(c, ptr, "letter"), child(ptr, "letter"))));
        } else if (kind == "inclusion") {
            const auto a = symbol_of(letters, field(c, ptr, "letter"), child(ptr, "letter"));
            const auto& ts = as_array(field(c, ptr, "targets"), child(ptr, "targets"));
            std::vector<Symbol> r;
            for (std::size_t k = 0; k < ts.size(); ++k)
                r.push_back(symbol_of(letters, ts[k], child(child(ptr, "targets"), k)));
            out.add(Constraint::inclusion(a, r));
        } else if (kind == "denial") {
            const auto& ls = as_array(field(c, ptr, "letters"), child(ptr, "letters"));
            if (ls.size() != 2)
                throw SchemaError(child(ptr, "letters"), "expected two letters");
            out.add(Constraint::denial(symbol_of(letters, ls[0], child(child(ptr, "letters"), 0)),
                                       symbol_of(letters, ls[1], child(child(ptr, "letters"), 1))));
        } else {
            throw SchemaError(child(ptr, "kind"), "unknown constraint kind '" + kind + "'");
        }
    }
    return out;
}

Json save_constraints(const ConstraintSet& cs, const Alphabet& letters) {
    Json arr = Json::array();
    for (const auto& c : cs) {
        switch (c.kind) {
        case Constraint::Kind::Key:
            arr.push_back({{"kind", "key"}, {"letter", letters.name(c.a)}});
            break;
        case Constraint::Kind::Inclusion: {
            Json ts = Json::array();
            for (Symbol t : c.targets)
                ts.push_back(letters.name(t));
            arr.push_back({{"kind", "inclusion"}, {"letter", letters.name(c.a)}, {"targets", ts}});
            break;
        }
        case Constraint::Kind::Denial:
            arr.push_back({{"kind", "denial"}, {"letters", {letters.name(c.a), letters.name(c.b)}}});
            break;
        }
    }
    return arr;
}

// Presburger matrices: true/false, {"and": [...]}, {"or": [...]}, {"not": m} and atoms
// {"lhs": [vars], "rel": "<=" | ">=" | "=", "rhs": [vars] or integer}.
Matrix load_matrix(const Json& j, const std::string& ptr, const std::map<std::string, VarId>& vars) {
    if (j.is_boolean())
        return j.get<bool>() ? Matrix::truth() : Matrix::falsity();
    if (!j.is_object())
        throw SchemaError(ptr, "expected a boolean or an object");
    auto kids = [&](const char* key) {
        const auto& arr = as_array(j.at(key), child(ptr, key));
        std::vector<Matrix> out;
        for (std::size_t i = 0; i < arr.size(); ++i)
            out.push_back(load_matrix(arr[i], child(child(ptr, key), i), vars));
        return out;
    };
    if (j.contains("and"))
        return Matrix::conj(kids("and"));
    if (j.contains("or"))
        return Matrix::disj(kids("or"));
    if (j.contains("not"))
        return Matrix::negate(load_matrix(j.at("not"), child(ptr, "not"), vars));
    auto sum = [&](const Json& arr, const std::string& sp) {
        std::vector<VarId> out;
        for (std::size_t i = 0; i < as_array(arr, sp).size(); ++i) {
            const auto& name = as_string(arr[i], child(sp, i));
            auto it = vars.find(name);
            if (it == vars.end())
                throw SchemaError(child(sp, i), "unknown variable '" + name + "'");
            out.push_back(it->second);
        }
        return out;
    };
    auto lhs = sum(field(j, ptr, "lhs"), child(ptr, "lhs"));
    const auto& rel = as_string(field(j, ptr, "rel"), child(ptr, "rel"));
    const auto& rhs = field(j, ptr, "rhs");
    if (rel != "<=" && rel != ">=" && rel != "=")
        throw SchemaError(child(ptr, "rel"), "unknown relation '" + rel + "'");
    if (rhs.is_number_integer()) {
        const auto c = rhs.get<std::int64_t>();
        if (rel == "<=")
            return Matrix::of(LinearAtom::leq_const(lhs, c));
        if (rel == ">=")
            return Matrix::of(LinearAtom::geq_const(lhs, c));
        return Matrix::of(LinearAtom::eq_const(lhs, c));
    }
    auto r = sum(rhs, child(ptr, "rhs"));
    if (rel == "<=")
        return Matrix::of(LinearAtom::leq(lhs, r));
    if (rel == ">=")
        return Matrix::of(LinearAtom::leq(r, lhs));
    return Matrix::of(LinearAtom::eq(lhs, r));
}

Json save_matrix(const Matrix& m, const std::vector<std::string>& names) {
    auto kids = [&] {
        Json arr = Json::array();
        for (const auto& k : m.kids)
            arr.push_back(save_matrix(k, names));
        return arr;
    };
    auto sum = [&](const std::vector<VarId>& vs) {
        Json arr = Json::array();
        for (VarId v : vs)
            arr.push_back(names.at(v));
        return arr;
    };
    switch (m.op) {
    case Matrix::Op::True:
        return true;
    case Matrix::Op::False:
        return false;
    case Matrix::Op::And:
        return {{"and", kids()}};
    case Matrix::Op::Or:
        return {{"or", kids()}};
    case Matrix::Op::Not:
        return {{"not", save_matrix(m.kids.at(0), names)}};
    case Matrix::Op::Atom:
        break;
    }
    const auto& a = m.atom;
    switch (a.kind) {
    case LinearAtom::Kind::SumLeqSum:
        return {{"lhs", sum(a.lhs)}, {"rel", "<="}, {"rhs", sum(a.rhs)}};
    case LinearAtom::Kind::SumEqSum:
        return {{"lhs", sum(a.lhs)}, {"rel", "="}, {"rhs", sum(a.rhs)}};
    case LinearAtom::Kind::SumLeqConst:
        return {{"lhs", sum(a.lhs)}, {"rel", "<="}, {"rhs", a.constant}};
    case LinearAtom::Kind::SumGeqConst:
        return {{"lhs", sum(a.lhs)}, {"rel", ">="}, {"rhs", a.constant}};
    case LinearAtom::Kind::SumEqConst:
        return {{"lhs", sum(a.lhs)}, {"rel", "="}, {"rhs", a.constant}};
    }
    return nullptr;
}

std::vector<std::string> presburger_names(const Problem& p) {
    auto names = p.alphabet->names();
    names.insert(names.end(), p.presburger.boundNames.begin(), p.presburger.boundNames.end());
    return names;
}

// ---- reports -----------------------------------------------------------------------------

Json names_of(const std::vector<Symbol>& w, const Alphabet& al) {
    Json arr = Json::array();
    for (Symbol s : w)
        arr.push_back(al.name(s));
    return arr;
}

Json data_word_json(const DataWord& w, const Alphabet& al) {
    Json arr = Json::array();
    for (const auto& l : w)
        arr.push_back({al.name(l.symbol), l.value});
    return arr;
}

Json mask_json(Mask m, const Alphabet& al) {
    Json arr = Json::array();
    for (Symbol s = 0; s < al.size(); ++s)
        if ((m >> s) & 1u)
            arr.push_back(al.name(s));
    return arr;
}

Json stats_json(const SearchStats& s) {
    return {{"partitionsTried", s.partitionsTried}, {"probes", s.probes},
            {"tailChecks", s.tailChecks},           {"presburgerQueries", s.presburgerQueries},
            {"supportsTried", s.supportsTried},     {"rejectedWitnesses", s.rejectedWitnesses}};
}

// `classes`: the alphabet the partition masks range over.
Json recipe_json(const WitnessRecipe& r, const Alphabet& classes) {
    Json part = Json::array();
    for (const auto& c : r.partition.classes) {
        Json e = {{"set", mask_json(c.set, classes)}, {"tag", to_string(c.tag)}};
        if (c.tag == ClassTag::FinSmall)
            e["size"] = c.size;
        part.push_back(e);
    }
    return {{"guessMode", r.mode == GuessMode::ThreeWay ? "three-way" : "four-way"},
            {"partition", part},
            {"u", names_of(r.u, *r.alphabet)},
            {"vPrefix", names_of(r.vPrefix, *r.alphabet)},
            {"vCycle", names_of(r.vCycle, *r.alphabet)}};
}

Json checks_json(const DataWord& w, const ConstraintSet& cs, const Alphabet& al) {
    Json arr = Json::array();
    auto res = check_constraints(w, cs);
    for (std::size_t i = 0; i < res.size(); ++i) {
        Json e = {{"constraint", cs.describe(cs.items()[i], al)}, {"holdsOnPrefix", res[i].holds}};
        if (res[i].first)
            e["first"] = *res[i].first;
        if (res[i].second)
            e["second"] = *res[i].second;
        arr.push_back(e);
    }
    return arr;
}

Json verify_json(const VerifyReport& v) {
    Json j = {{"ok", v.ok},
              {"runAccepted", v.runAccepted},
              {"keysAndDenials", v.keysAndDenials},
              {"pairsRecur", v.pairsRecur},
              {"inclusionFinite", v.inclusionFinite},
              {"inclusionStructural", v.inclusionStructural},
              {"locallyDifferent", v.locallyDifferent}};
    if (!v.failure.empty())
        j["failure"] = v.failure;
    return j;
}

SearchOptions search_options(const RunOptions& o) {
    SearchOptions s;
    s.parallel = o.parallel;
    s.partitionLimit = o.partitionLimit;
    s.parikh.maxSupports = o.maxSupport;
    s.parikh.ilp.nodeLimit = o.nodeLimit;
    return s;
}

Outcome run(const Problem& p, const RunOptions& o, bool witness) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    Json& rep = out.report;
    rep["mode"] = to_string(p.mode);
    const auto opts = search_options(o);
    auto unroll = [&](std::size_t len) { return o.unroll ? o.unroll : 3 * len; };
    bool yes = false;

    // automaton-with-constraints modes share the report layout
    auto adc_report = [&](const Verdict& v, const Adc& adc, const Alphabet& classes) {
        yes = v.nonEmpty;
        rep["verdict"] = yes ? "nonempty" : "empty";
        rep["procedure"] = v.procedure;
        rep["stats"] = stats_json(v.stats);
        if (!v.witness)
            return;
        const auto& r = *v.witness;
        rep["witness"] = recipe_json(r, classes);
        const std::size_t n = unroll(r.length());
        rep["unroll"] = n;
        auto ver = verify_witness_prefix(r, n, adc);
        rep["verification"] = verify_json(ver);
        rep["prefix"] = data_word_json(ver.prefix, *adc.automaton.ts.alphabet());
        rep["constraints"] = checks_json(ver.prefix, adc.constraints, *adc.automaton.ts.alphabet());
    };

    switch (p.mode) {
    case Mode::Adc:
    case Mode::AdcKeyfree:
    case Mode::LocallyDifferent: {
        Adc adc{p.automaton, p.constraints};
        Verdict v = p.mode == Mode::Adc          ? adc_nonempty(adc, opts)
                    : p.mode == Mode::AdcKeyfree ? adc_nonempty_keyfree(adc, opts)
                                                 : locally_different_nonempty(adc.automaton, adc.constraints, opts);
        adc_report(v, adc, *p.automaton.ts.alphabet());
        break;
    }
    case Mode::Zonal: {
        auto v = zonal_nonempty(p.automaton, p.constraints, p.alphabet->size(), opts);
        adc_report(v, Adc{p.automaton, p.constraints}, *p.automaton.ts.alphabet());
        break;
    }
    case Mode::ProfileAdc: {
        ProfileAdc pa{p.alphabet, p.automaton, p.constraints};
        auto v = profile_adc_nonempty(pa, opts);
        yes = v.nonEmpty;
        rep["verdict"] = yes ? "nonempty" : "empty";
        rep["procedure"] = v.procedure;
        rep["stats"] = stats_json(v.stats);
        if (v.witness) {
            const auto& r = *v.witness;
            rep["witness"] = recipe_json(r, *zonal_alphabet(*p.alphabet));
            // each base position needs at most two zonal positions
            const std::size_t n = unroll(r.length());
            auto rp = replay_profile_witness(pa, r, 2 * n + 1);
            DataWord pre = rp.prefix;
            pre.resize(std::min(pre.size(), n));
            rep["unroll"] = n;
            Json ver = {{"ok", rp.ok},
                        {"zonalVerified", rp.zonalVerified},
                        {"profileAccepted", rp.profileAccepted},
                        {"flagsMatch", rp.flagsMatch},
                        {"keysAndDenials", rp.keysAndDenials}};
            if (!rp.failure.empty())
                ver["failure"] = rp.failure;
            rep["verification"] = ver;
            rep["prefix"] = data_word_json(pre, *p.alphabet);
            rep["constraints"] = checks_json(pre, p.constraints, *p.alphabet);
        }
        break;
    }
    case Mode::Ltl: {
        auto v = ltl_sat(p.formula, p.alphabet, opts, o.unroll);
        yes = v.satisfiable;
        rep["verdict"] = yes ? "sat" : "unsat";
        rep["procedure"] = v.procedure;
        rep["fragment"] = to_string(v.fragment);
        rep["stats"] = stats_json(v.inner.stats);
        rep["tableau"] = {{"closureSize", v.tableau.closureSize},
                          {"states", v.tableau.states},
                          {"untilSets", v.tableau.untilSets}};
        if (yes) {
            rep["replayOk"] = v.replayOk;
            if (v.prefix) {
                rep["prefix"] = data_word_json(*v.prefix, *p.alphabet);
                rep["unroll"] = v.prefix->size();
            }
            if (v.lasso)
                rep["lasso"] = {{"prefix", data_word_json(v.lasso->prefix, *p.alphabet)},
                                {"cycle", data_word_json(v.lasso->cycle, *p.alphabet)}};
        }
        break;
    }
    case Mode::Presburger: {
        PresburgerAutomaton pa;
        pa.nfa.ts = p.automaton.ts;
        pa.nfa.initial = p.automaton.initial;
        pa.nfa.finals = p.nfaFinals;
        pa.formula = p.presburger;
        ParikhStats st;
        auto sol = parikh_solve(pa, search_options(o).parikh, &st);
        yes = sol.has_value();
        rep["verdict"] = yes ? "nonempty" : "empty";
        rep["procedure"] = "parikh";
        rep["stats"] = {{"presburgerQueries", st.queries}, {"supportsTried", st.supportsTried}, {"ilpNodes", st.ilpNodes}};
        if (sol) {
            const auto parikh = parikh_of(sol->word, p.alphabet->size());
            Json counts = Json::object();
            for (Symbol a = 0; a < p.alphabet->size(); ++a)
                counts[p.alphabet->name(a)] = parikh[a];
            Json bound = Json::object();
            for (std::size_t i = 0; i < p.presburger.boundNames.size(); ++i)
                bound[p.presburger.boundNames[i]] = sol->bound.at(i);
            rep["word"] = names_of(sol->word, *p.alphabet);
            rep["parikh"] = counts;
            rep["bound"] = bound;
            rep["verification"] = {{"nfaAccepts", nfa_run_exists(pa.nfa, sol->word)},
                                   {"formulaHolds", eval_formula(pa.formula, parikh, sol->bound)}};
        }
        break;
    }
    }
    if (witness && !yes)
        rep["error"] = "the instance has no model, so there is no witness";
    out.exitCode = yes ? 0 : 1;
    rep["timeMs"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace

const char* to_string(Mode m) {
    for (const auto& e : kModes)
        if (e.mode == m)
            return e.name;
    return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
    for (const auto& e : kModes)
        if (s == e.name)
            return e.mode;
    return std::nullopt;
}

std::optional<Target> parse_target(std::string_view s) {
    if (s == "adc")
        return Target::Adc;
    if (s == "zonal")
        return Target::Zonal;
    if (s == "normalform")
        return Target::NormalForm;
    return std::nullopt;
}

AlphabetPtr letter_alphabet(Mode m, const AlphabetPtr& base) {
    if (m == Mode::ProfileAdc)
        return profile_alphabet(*base);
    if (m == Mode::Zonal)
        return zonal_alphabet(*base);
    return base;
}

Problem load_problem(const Json& doc, std::optional<Mode> mode_override) {
    if (!doc.is_object())
        throw SchemaError("", "expected an object");
    Problem p;
    if (mode_override) {
        p.mode = *mode_override;
    } else if (doc.contains("mode")) {
        const auto& m = as_string(doc.at("mode"), "/mode");
        auto pm = parse_mode(m);
        if (!pm)
            throw SchemaError("/mode", "unknown mode '" + m + "'");
        p.mode = *pm;
    } else {
        p.mode = doc.contains("formula") ? Mode::Ltl : doc.contains("presburger") ? Mode::Presburger : Mode::Adc;
    }
    p.alphabet = load_alphabet(doc);
    auto forbid = [&](const char* key) {
        if (doc.contains(key))
            throw SchemaError(std::string("/") + key, std::string("field not used in mode ") + to_string(p.mode));
    };
    if (p.mode == Mode::Ltl) {
        forbid("automaton");
        forbid("constraints");
        forbid("presburger");
        try {
            p.formula = parse_formula(as_string(field(doc, "", "formula"), "/formula"));
        } catch (const LtlSyntaxError& e) {
            throw SchemaError("/formula", e.what());
        }
        for (const auto& a : atoms_of(*p.formula))
            if (!p.alphabet->find(a))
                throw SchemaError("/formula", "atom '" + a + "' is not in the alphabet");
        return p;
    }
    forbid("formula");
    AlphabetPtr letters;
    try {
        letters = letter_alphabet(p.mode, p.alphabet);
    } catch (const ProfileError& e) {
        throw SchemaError("/alphabet", e.what());
    }
    load_automaton(field(doc, "", "automaton"), letters, p.mode == Mode::Presburger, p);
    if (p.mode == Mode::Presburger) {
        forbid("constraints");
        const auto& pj = field(doc, "", "presburger");
        if (!pj.is_object())
            throw SchemaError("/presburger", "expected an object");
        std::map<std::string, VarId> vars;
        for (Symbol a = 0; a < p.alphabet->size(); ++a)
            vars[p.alphabet->name(a)] = a;
        p.presburger.freeCount = p.alphabet->size();
        if (auto it = pj.find("bound"); it != pj.end()) {
            const auto& arr = as_array(*it, "/presburger/bound");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const auto& name = as_string(arr[i], child("/presburger/bound", i));
                if (!vars.emplace(name, static_cast<VarId>(vars.size())).second)
                    throw SchemaError(child("/presburger/bound", i), "variable '" + name + "' already declared");
                p.presburger.boundNames.push_back(name);
            }
        }
        p.presburger.matrix = load_matrix(field(pj, "/presburger", "formula"), "/presburger/formula", vars);
        return p;
    }
    forbid("presburger");
    // profile automata read flagged letters, but their constraints speak about base letters
    p.constraints = load_constraints(doc, p.mode == Mode::ProfileAdc ? *p.alphabet : *letters);
    return p;
}

Json save_problem(const Problem& p) {
    Json doc;
    doc["mode"] = to_string(p.mode);
    doc["alphabet"] = p.alphabet->names();
    if (p.mode == Mode::Ltl) {
        doc["formula"] = to_string(*p.formula);
        return doc;
    }
    const auto& al = *p.automaton.ts.alphabet();
    Json trans = Json::array();
    for (const auto& t : p.automaton.ts.transitions())
        trans.push_back({t.from, al.name(t.symbol), t.to});
    const auto& fin = p.mode == Mode::Presburger ? p.nfaFinals : p.automaton.final;
    Json finals = Json::array();
    for (State q = 0; q < fin.size(); ++q)
        if (fin[q])
            finals.push_back(q);
    doc["automaton"] = {{"states", p.automaton.ts.state_count()},
                        {"initial", p.automaton.initial},
                        {"finals", finals},
                        {"transitions", trans}};
    if (p.mode == Mode::Presburger)
        doc["presburger"] = {{"bound", p.presburger.boundNames},
                             {"formula", save_matrix(p.presburger.matrix, presburger_names(p))}};
    else
        doc["constraints"] = save_constraints(p.constraints, p.mode == Mode::ProfileAdc ? *p.alphabet : al);
    return doc;
}

Outcome cmd_check(const Problem& p, const RunOptions& o) { return run(p, o, false); }
Outcome cmd_witness(const Problem& p, const RunOptions& o) { return run(p, o, true); }

Json cmd_translate(const Problem& p, Target t) {
    Problem out;
    switch (t) {
    case Target::NormalForm:
        if (p.mode != Mode::Ltl)
            throw TranslateError("normalform needs an ltl problem");
        out.mode = Mode::Ltl;
        out.alphabet = p.alphabet;
        out.formula = normal_form(p.formula);
        return save_problem(out);
    case Target::Adc:
        if (p.mode != Mode::Ltl)
            throw TranslateError("adc translation needs an ltl problem");
        switch (fragment_of(*p.formula)) {
        case Fragment::Plain:
            out.mode = Mode::Adc;
            out.alphabet = p.alphabet;
            out.automaton = plain_tableau(p.formula, p.alphabet);
            break;
        case Fragment::WeakOnly: {
            auto tr = translate_weak(p.formula, p.alphabet);
            out.mode = Mode::AdcKeyfree;
            out.alphabet = tr.letters.alphabet;
            out.automaton = std::move(tr.adc.automaton);
            out.constraints = std::move(tr.adc.constraints);
            break;
        }
        case Fragment::StrongOnly: {
            auto tr = translate_strong(p.formula, p.alphabet);
            out.mode = Mode::Adc;
            out.alphabet = tr.letters.alphabet;
            out.automaton = std::move(tr.adc.automaton);
            out.constraints = std::move(tr.adc.constraints);
            break;
        }
        case Fragment::StrongWithProfiles: {
            auto tr = translate_full(p.formula, p.alphabet);
            out.mode = Mode::ProfileAdc;
            out.alphabet = tr.adc.base;
            out.automaton = std::move(tr.adc.automaton);
            out.constraints = std::move(tr.adc.constraints);
            break;
        }
        }
        return save_problem(out);
    case Target::Zonal: {
        ProfileAdc pa;
        if (p.mode == Mode::ProfileAdc) {
            pa = ProfileAdc{p.alphabet, p.automaton, p.constraints};
        } else if (p.mode == Mode::Ltl && fragment_of(*p.formula) == Fragment::StrongWithProfiles) {
            pa = translate_full(p.formula, p.alphabet).adc;
        } else {
            throw TranslateError("zonal translation needs a profile-adc problem or an ltl formula with Xs/Xd");
        }
        const std::size_t n = pa.base->size();
        auto zc = translate_constraints_zonal(pa.constraints, n);
        out.mode = Mode::Zonal;
        out.alphabet = pa.base;
        out.automaton = zonal_automaton(pa.automaton, *pa.base, zc.onceFlags);
        out.constraints = std::move(zc.constraints);
        return save_problem(out);
    }
    }
    return {};
}

Json without_timing(Json report) {
    report.erase("timeMs");
    return report;
}

} // namespace dw::cli
