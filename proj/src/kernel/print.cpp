#include "wp/print.hpp"

#include <variant>

namespace wp {

namespace {

int term_prec(const Term& t) {
    switch (t.kind()) {
        case TermKind::Add:
        case TermKind::Sub: return 1;
        case TermKind::Mul:
        case TermKind::Div: return 2;
        case TermKind::Neg: return 3;
        case TermKind::Lit:
            if (!t.value().is_integer() && !t.value().decimal()) return 2;
            return t.value().sign() < 0 ? 3 : 4;
        default: return 4;
    }
}

void print_term(std::string& out, const Term& t, int min_prec);

void print_lit(std::string& out, const Rational& v) {
    if (auto d = v.decimal()) {
        out += *d;
        return;
    }
    // non-terminating expansion: written as a quotient of integers
    out += std::to_string(v.num());
    out += "/";
    out += std::to_string(v.den());
}

void print_term(std::string& out, const Term& t, int min_prec) {
    bool paren = term_prec(t) < min_prec;
    if (paren) out += "(";
    switch (t.kind()) {
        case TermKind::Var: out += t.name(); break;
        case TermKind::Lit: print_lit(out, t.value()); break;
        case TermKind::Neg:
            out += "-";
            // "-(3)" keeps the negation node distinct from the literal -3
            if (t.lhs().is(TermKind::Lit) && t.lhs().value().sign() >= 0) {
                out += "(";
                print_term(out, t.lhs(), 0);
                out += ")";
            } else {
                print_term(out, t.lhs(), 3);
            }
            break;
        case TermKind::Add:
        case TermKind::Sub:
            print_term(out, t.lhs(), 1);
            out += t.is(TermKind::Add) ? " + " : " - ";
            print_term(out, t.rhs(), 2);
            break;
        case TermKind::Mul:
        case TermKind::Div:
            print_term(out, t.lhs(), 2);
            out += t.is(TermKind::Mul) ? "·" : "/";
            print_term(out, t.rhs(), 3);
            break;
        case TermKind::App:
            out += t.name();
            out += "(";
            for (std::size_t i = 0; i < t.args().size(); ++i) {
                if (i) out += ", ";
                print_term(out, t.args()[i], 0);
            }
            out += ")";
            break;
    }
    if (paren) out += ")";
}

void print_interval(std::string& out, const Interval& iv) {
    out += iv.lo_closed ? "[" : "(";
    print_term(out, iv.lo, 0);
    out += ",";
    print_term(out, iv.hi, 0);
    out += iv.hi_closed ? "]" : ")";
}

void print_def_arg(std::string& out, const DefArg& a) {
    if (const auto* t = std::get_if<Term>(&a))
        print_term(out, *t, 1);
    else
        print_interval(out, std::get<Interval>(a));
}

int formula_prec(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::ForAll:
        case FormulaKind::Exists: return 0;
        case FormulaKind::Iff: return 1;
        case FormulaKind::Implies: return 2;
        case FormulaKind::Or: return 3;
        case FormulaKind::And: return 4;
        case FormulaKind::Not: return 5;
        default: return 6;
    }
}

const Notation* notation_for(const Environment* env, const std::string& def) {
    if (!env) return nullptr;
    for (const auto& n : env->notations())
        if (n.definition == def) return &n;
    return nullptr;
}

void print_formula(std::string& out, const Formula& f, int min_prec, bool rightmost, const Environment* env) {
    int prec = formula_prec(f);
    bool paren = prec < min_prec && !(prec == 0 && rightmost);
    if (paren) {
        out += "(";
        rightmost = true;
    }
    switch (f.kind()) {
        case FormulaKind::Atom:
            print_term(out, f.lhs(), 0);
            out += " ";
            out += rel_symbol(f.rel());
            out += " ";
            print_term(out, f.rhs(), 0);
            break;
        case FormulaKind::Pred:
            out += f.name();
            if (!f.args().empty()) {
                out += "(";
                for (std::size_t i = 0; i < f.args().size(); ++i) {
                    if (i) out += ", ";
                    print_term(out, f.args()[i], 0);
                }
                out += ")";
            }
            break;
        case FormulaKind::InInterval:
            print_term(out, f.member(), 1);
            out += " ∈ ";
            print_interval(out, f.interval());
            break;
        case FormulaKind::InSet:
            print_term(out, f.member(), 1);
            out += " ∈ ";
            out += f.name();
            break;
        case FormulaKind::Not: {
            out += "¬";
            const Formula& b = f.body();
            bool wrap = b.is(FormulaKind::Atom) || b.is(FormulaKind::InInterval) || b.is(FormulaKind::InSet);
            if (wrap) {
                out += "(";
                print_formula(out, b, 0, true, env);
                out += ")";
            } else {
                print_formula(out, b, 5, rightmost, env);
            }
            break;
        }
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff: {
            const char* op = f.is(FormulaKind::And) ? " ∧ "
                             : f.is(FormulaKind::Or) ? " ∨ "
                             : f.is(FormulaKind::Implies) ? " ⇒ "
                                                          : " ⇔ ";
            // ∧, ∨ and ⇒ associate to the right; ⇔ does not associate
            int left_prec = prec + 1;
            int right_prec = f.is(FormulaKind::Iff) ? prec + 1 : prec;
            print_formula(out, f.left(), left_prec, false, env);
            out += op;
            print_formula(out, f.right(), right_prec, rightmost, env);
            break;
        }
        case FormulaKind::ForAll:
        case FormulaKind::Exists:
            out += f.is(FormulaKind::ForAll) ? "∀ " : "∃ ";
            out += f.name();
            out += " : ";
            out += f.sort().str();
            out += ", ";
            print_formula(out, f.body(), 0, true, env);
            break;
        case FormulaKind::DefApp:
            if (const Notation* n = notation_for(env, f.name()); n && n->pieces.size() > 0) {
                bool first = true;
                for (const auto& piece : n->pieces) {
                    if (!first) out += " ";
                    first = false;
                    if (piece.is_slot)
                        print_def_arg(out, f.def_args().at(piece.param));
                    else
                        out += piece.word;
                }
            } else {
                out += f.name();
                out += "(";
                for (std::size_t i = 0; i < f.def_args().size(); ++i) {
                    if (i) out += ", ";
                    print_def_arg(out, f.def_args()[i]);
                }
                out += ")";
            }
            break;
    }
    if (paren) out += ")";
}

}  // namespace

std::string to_string(const Term& t) {
    std::string out;
    print_term(out, t, 0);
    return out;
}

std::string to_string(const Interval& iv) {
    std::string out;
    print_interval(out, iv);
    return out;
}

std::string to_string(const Formula& f, const Environment* env) {
    std::string out;
    print_formula(out, f, 0, true, env);
    return out;
}

}  // namespace wp
