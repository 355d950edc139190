// SPDX-License-Identifier: Apache-2.0
#include "dw/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace dw {

using Op = Formula::Op;

namespace {

FormulaPtr make(Op op, FormulaPtr l = nullptr, FormulaPtr r = nullptr, std::string atom = {}) {
    auto f = std::make_shared<Formula>();
    f->op = op;
    f->left = std::move(l);
    f->right = std::move(r);
    f->atom = std::move(atom);
    return f;
}

} // namespace

int compare(const Formula& x, const Formula& y) {
    if (x.op != y.op)
        return static_cast<int>(x.op) < static_cast<int>(y.op) ? -1 : 1;
    if (x.op == Op::Atom)
        return x.atom.compare(y.atom) < 0 ? -1 : (x.atom == y.atom ? 0 : 1);
    if (x.left && y.left) {
        if (int c = compare(*x.left, *y.left))
            return c;
    }
    if (x.right && y.right)
        return compare(*x.right, *y.right);
    return 0;
}

bool operator==(const Formula& x, const Formula& y) { return compare(x, y) == 0; }

bool same(const FormulaPtr& x, const FormulaPtr& y) {
    if (!x || !y)
        return !x && !y;
    return *x == *y;
}

namespace ltl {
FormulaPtr top() { return make(Op::True); }
FormulaPtr bottom() { return make(Op::False); }
FormulaPtr atom(std::string name) { return make(Op::Atom, nullptr, nullptr, std::move(name)); }
FormulaPtr lnot(FormulaPtr f) { return make(Op::Not, std::move(f)); }
FormulaPtr land(FormulaPtr a, FormulaPtr b) { return make(Op::And, std::move(a), std::move(b)); }
FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return make(Op::Or, std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return lor(lnot(std::move(a)), std::move(b)); }
FormulaPtr next(FormulaPtr f) { return make(Op::Next, std::move(f)); }
FormulaPtr next_same(FormulaPtr f) { return make(Op::NextSame, std::move(f)); }
FormulaPtr next_diff(FormulaPtr f) { return make(Op::NextDiff, std::move(f)); }
FormulaPtr until(FormulaPtr a, FormulaPtr b) { return make(Op::Until, std::move(a), std::move(b)); }
FormulaPtr release(FormulaPtr a, FormulaPtr b) { return make(Op::Release, std::move(a), std::move(b)); }
FormulaPtr eventually(FormulaPtr f) { return until(top(), std::move(f)); }
FormulaPtr globally(FormulaPtr f) { return release(bottom(), std::move(f)); }
FormulaPtr diamond_w(FormulaPtr f) { return make(Op::DiamondW, std::move(f)); }
FormulaPtr diamond_s(FormulaPtr f) { return make(Op::DiamondS, std::move(f)); }
} // namespace ltl

// ---------------------------------------------------------------------------------------
// parser

namespace {

struct Token {
    enum class Kind { Ident, Keyword, Symbol, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t pos = 0;
};

const std::set<std::string>& keywords() {
    static const std::set<std::string> k{"true", "false", "X", "Xs", "Xd", "U", "R", "F", "G", "Dw", "Ds"};
    return k;
}

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            std::string word(s.substr(i, j - i));
            out.push_back({keywords().count(word) ? Token::Kind::Keyword : Token::Kind::Ident, word, i});
            i = j;
            continue;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Token::Kind::Symbol, "->", i});
            i += 2;
            continue;
        }
        if (c == '!' || c == '&' || c == '|' || c == '(' || c == ')') {
            out.push_back({Token::Kind::Symbol, std::string(1, c), i});
            ++i;
            continue;
        }
        throw LtlSyntaxError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({Token::Kind::End, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view s) : toks_(tokenize(s)) {}

    FormulaPtr parse() {
        auto f = implication();
        if (peek().kind != Token::Kind::End)
            throw LtlSyntaxError("unexpected '" + peek().text + "'", peek().pos);
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool accept(const std::string& text) {
        if (peek().kind != Token::Kind::End && peek().kind != Token::Kind::Ident && peek().text == text) {
            ++pos_;
            return true;
        }
        return false;
    }

    FormulaPtr implication() {
        auto l = disjunction();
        if (accept("->"))
            return ltl::implies(l, implication());
        return l;
    }
    FormulaPtr disjunction() {
        auto l = conjunction();
        while (accept("|"))
            l = ltl::lor(l, conjunction());
        return l;
    }
    FormulaPtr conjunction() {
        auto l = temporal();
        while (accept("&"))
            l = ltl::land(l, temporal());
        return l;
    }
    FormulaPtr temporal() {
        auto l = unary();
        if (accept("U"))
            return ltl::until(l, temporal());
        if (accept("R"))
            return ltl::release(l, temporal());
        return l;
    }
    FormulaPtr unary() {
        const Token& t = peek();
        if (accept("!"))
            return ltl::lnot(unary());
        if (accept("X"))
            return ltl::next(unary());
        if (accept("Xs"))
            return ltl::next_same(unary());
        if (accept("Xd"))
            return ltl::next_diff(unary());
        if (accept("F"))
            return ltl::eventually(unary());
        if (accept("G"))
            return ltl::globally(unary());
        if (accept("Dw"))
            return ltl::diamond_w(unary());
        if (accept("Ds"))
            return ltl::diamond_s(unary());
        if (accept("true"))
            return ltl::top();
        if (accept("false"))
            return ltl::bottom();
        if (accept("(")) {
            auto f = implication();
            if (!accept(")"))
                throw LtlSyntaxError("expected ')'", peek().pos);
            return f;
        }
        if (t.kind == Token::Kind::Ident) {
            ++pos_;
            return ltl::atom(t.text);
        }
        if (t.kind == Token::Kind::End)
            throw LtlSyntaxError("unexpected end of input", t.pos);
        throw LtlSyntaxError("unexpected '" + t.text + "'", t.pos);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) {
    switch (f.op) {
    case Op::True:
        return "true";
    case Op::False:
        return "false";
    case Op::Atom:
        return f.atom;
    case Op::Not:
        return "!" + to_string(*f.left);
    case Op::Next:
        return "X " + to_string(*f.left);
    case Op::NextSame:
        return "Xs " + to_string(*f.left);
    case Op::NextDiff:
        return "Xd " + to_string(*f.left);
    case Op::DiamondW:
        return "Dw " + to_string(*f.left);
    case Op::DiamondS:
        return "Ds " + to_string(*f.left);
    case Op::And:
        return "(" + to_string(*f.left) + " & " + to_string(*f.right) + ")";
    case Op::Or:
        return "(" + to_string(*f.left) + " | " + to_string(*f.right) + ")";
    case Op::Until:
        if (f.left->op == Op::True)
            return "F " + to_string(*f.right);
        return "(" + to_string(*f.left) + " U " + to_string(*f.right) + ")";
    case Op::Release:
        if (f.left->op == Op::False)
            return "G " + to_string(*f.right);
        return "(" + to_string(*f.left) + " R " + to_string(*f.right) + ")";
    }
    return "?";
}

std::size_t formula_size(const Formula& f) {
    std::size_t n = 1;
    if (f.left)
        n += formula_size(*f.left);
    if (f.right)
        n += formula_size(*f.right);
    return n;
}

std::vector<std::string> atoms_of(const Formula& f) {
    std::set<std::string> out;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g.op == Op::Atom)
            out.insert(g.atom);
        if (g.left)
            walk(*g.left);
        if (g.right)
            walk(*g.right);
    };
    walk(f);
    return {out.begin(), out.end()};
}

const char* to_string(Fragment f) {
    switch (f) {
    case Fragment::Plain:
        return "plain";
    case Fragment::WeakOnly:
        return "weak";
    case Fragment::StrongOnly:
        return "strong";
    case Fragment::StrongWithProfiles:
        return "profile";
    }
    return "?";
}

Fragment fragment_of(const Formula& f) {
    bool weak = false, strong = false, flags = false;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        weak = weak || g.op == Op::DiamondW;
        strong = strong || g.op == Op::DiamondS;
        flags = flags || g.op == Op::NextSame || g.op == Op::NextDiff;
        if (g.left)
            walk(*g.left);
        if (g.right)
            walk(*g.right);
    };
    walk(f);
    if (flags)
        return Fragment::StrongWithProfiles;
    if (strong)
        return Fragment::StrongOnly;
    if (weak)
        return Fragment::WeakOnly;
    return Fragment::Plain;
}

// ---------------------------------------------------------------------------------------
// evaluation on lassos: every subformula gets a truth vector over the representative
// positions prefix + one cycle copy; the successor of the last position is the cycle start.

bool evaluate(const LassoDataWord& w, const Alphabet& alphabet, std::size_t i, const Formula& f) {
    if (w.cycle.empty())
        throw std::invalid_argument("evaluate: empty cycle");
    if (i == 0)
        throw std::invalid_argument("evaluate: positions are 1-based");
    const std::size_t p = w.prefix.size(), c = w.cycle.size(), n = p + c;
    std::vector<DataLetter> pos(w.prefix);
    pos.insert(pos.end(), w.cycle.begin(), w.cycle.end());
    auto succ = [&](std::size_t k) { return k + 1 < n ? k + 1 : p; };

    std::function<std::vector<bool>(const Formula&)> vec = [&](const Formula& g) -> std::vector<bool> {
        std::vector<bool> v(n, false);
        switch (g.op) {
        case Op::True:
            v.assign(n, true);
            break;
        case Op::False:
            break;
        case Op::Atom: {
            auto s = alphabet.find(g.atom);
            for (std::size_t k = 0; k < n; ++k)
                v[k] = s && pos[k].symbol == *s;
            break;
        }
        case Op::Not: {
            auto a = vec(*g.left);
            for (std::size_t k = 0; k < n; ++k)
                v[k] = !a[k];
            break;
        }
        case Op::And:
        case Op::Or: {
            auto a = vec(*g.left), b = vec(*g.right);
            for (std::size_t k = 0; k < n; ++k)
                v[k] = g.op == Op::And ? (a[k] && b[k]) : (a[k] || b[k]);
            break;
        }
        case Op::Next:
        case Op::NextSame:
        case Op::NextDiff: {
            auto a = vec(*g.left);
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t s = succ(k);
                const bool eq = pos[k].value == pos[s].value;
                v[k] = a[s] && (g.op == Op::Next || (g.op == Op::NextSame) == eq);
            }
            break;
        }
        case Op::Until:
        case Op::Release: {
            auto a = vec(*g.left), b = vec(*g.right);
            const bool until = g.op == Op::Until;
            v.assign(n, !until);
            // two backward sweeps reach the fixpoint: the first settles the cycle start
            for (int sweep = 0; sweep < 2; ++sweep)
                for (std::size_t k = n; k-- > 0;)
                    v[k] = until ? (b[k] || (a[k] && v[succ(k)])) : (b[k] && (a[k] || v[succ(k)]));
            break;
        }
        case Op::DiamondW:
        case Op::DiamondS: {
            auto a = vec(*g.left);
            for (std::size_t k = 0; k < n; ++k) {
                bool found = g.op == Op::DiamondS && k >= p && a[k]; // the next cycle copy
                for (std::size_t j = 0; j < n && !found; ++j)
                    found = a[j] && pos[j].value == pos[k].value && (g.op == Op::DiamondW || j != k);
                v[k] = found;
            }
            break;
        }
        }
        return v;
    };
    std::size_t k = i - 1;
    if (k >= n)
        k = p + (k - p) % c;
    return vec(f)[k];
}

// ---------------------------------------------------------------------------------------
// normal form

namespace {

FormulaPtr nf(const FormulaPtr& f);

FormulaPtr neg(const FormulaPtr& f) {
    switch (f->op) {
    case Op::True:
        return ltl::bottom();
    case Op::False:
        return ltl::top();
    case Op::Atom:
        return ltl::lnot(f);
    case Op::Not:
        return nf(f->left);
    case Op::And:
        return ltl::lor(neg(f->left), neg(f->right));
    case Op::Or:
        return ltl::land(neg(f->left), neg(f->right));
    case Op::Next:
        return ltl::next(neg(f->left));
    case Op::Until:
        return ltl::release(neg(f->left), neg(f->right));
    case Op::Release:
        return ltl::until(neg(f->left), neg(f->right));
    case Op::NextSame:
        return ltl::lor(ltl::next_diff(ltl::top()), ltl::next_same(neg(f->left)));
    case Op::NextDiff:
        return ltl::lor(ltl::next_same(ltl::top()), ltl::next_diff(neg(f->left)));
    case Op::DiamondW:
        return ltl::lnot(ltl::diamond_w(nf(f->left)));
    case Op::DiamondS:
        return ltl::lnot(ltl::diamond_s(nf(f->left)));
    }
    return f;
}

FormulaPtr nf(const FormulaPtr& f) {
    switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
        return f;
    case Op::Not:
        return neg(f->left);
    default:
        break;
    }
    return make(f->op, f->left ? nf(f->left) : nullptr, f->right ? nf(f->right) : nullptr);
}

} // namespace

FormulaPtr normal_form(const FormulaPtr& f) { return nf(f); }

bool is_normal_form(const Formula& f) {
    if (f.op == Op::Not)
        return f.left->op == Op::Atom || ((f.left->op == Op::DiamondW || f.left->op == Op::DiamondS) &&
                                          is_normal_form(*f.left));
    return (!f.left || is_normal_form(*f.left)) && (!f.right || is_normal_form(*f.right));
}

std::vector<FormulaPtr> closure(const FormulaPtr& f, const Alphabet& alphabet) {
    std::set<FormulaPtr, FormulaLess> cl;
    std::vector<FormulaPtr> todo{f};
    for (const auto& a : alphabet.names())
        todo.push_back(ltl::atom(a));
    while (!todo.empty()) {
        auto g = todo.back();
        todo.pop_back();
        if (!cl.insert(g).second)
            continue;
        if (g->op == Op::Not && g->left->op == Op::Atom) {
            FormulaPtr others;
            for (const auto& b : alphabet.names())
                if (b != g->left->atom)
                    others = others ? ltl::lor(others, ltl::atom(b)) : ltl::atom(b);
            todo.push_back(others ? others : ltl::bottom());
        }
        if (g->left)
            todo.push_back(g->left);
        if (g->right)
            todo.push_back(g->right);
    }
    return {cl.begin(), cl.end()};
}

} // namespace dw
