#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <vector>

#include "wp/syntax.hpp"

// Reference decision procedure for the solver tests. Deliberately naive:
// arbitrary precision, fixed elimination order, no redundancy removal.
namespace wp::oracle {

using Q = boost::multiprecision::cpp_rational;

// Σ a[i]·x_i + c  (< | ≤ | =)  0
struct Row {
    std::vector<Q> a;
    Q c;
    enum Kind { Lt, Le, Eq } kind;
};

inline bool feasible(std::vector<Row> rows, std::size_t nvars) {
    // Equalities become pairs of weak inequalities.
    std::vector<Row> ineq;
    for (auto& r : rows) {
        if (r.kind != Row::Eq) {
            ineq.push_back(r);
            continue;
        }
        Row lo = r, hi = r;
        lo.kind = hi.kind = Row::Le;
        for (auto& x : hi.a) x = -x;
        hi.c = -hi.c;
        ineq.push_back(lo);
        ineq.push_back(hi);
    }
    for (std::size_t v = 0; v < nvars; ++v) {
        std::vector<Row> pos, neg, rest;
        for (auto& r : ineq) (r.a[v] > 0 ? pos : r.a[v] < 0 ? neg : rest).push_back(r);
        for (const auto& p : pos)
            for (const auto& n : neg) {
                // p/ap + n/|an| cancels x_v
                Q sp = 1 / p.a[v], sn = -1 / n.a[v];
                Row r;
                r.a.resize(nvars);
                for (std::size_t i = 0; i < nvars; ++i) r.a[i] = p.a[i] * sp + n.a[i] * sn;
                r.c = p.c * sp + n.c * sn;
                r.kind = (p.kind == Row::Lt || n.kind == Row::Lt) ? Row::Lt : Row::Le;
                rest.push_back(r);
            }
        ineq = std::move(rest);
    }
    for (const auto& r : ineq)
        if (r.kind == Row::Lt ? !(r.c < 0) : !(r.c <= 0)) return false;
    return true;
}

// Linear term over named variables; throws on anything nonlinear.
inline std::map<std::string, Q> linear(const Term& t, Q& constant, const Q& scale = 1) {
    std::map<std::string, Q> out;
    auto merge = [&](const std::map<std::string, Q>& m) {
        for (const auto& [k, v] : m) out[k] += v;
    };
    auto lit = [](const Term& x) { return Q(x.value().num()) / Q(x.value().den()); };
    switch (t.kind()) {
        case TermKind::Var: out[t.name()] += scale; break;
        case TermKind::Lit: constant += scale * lit(t); break;
        case TermKind::Neg: merge(linear(t.args()[0], constant, -scale)); break;
        case TermKind::Add:
            merge(linear(t.lhs(), constant, scale));
            merge(linear(t.rhs(), constant, scale));
            break;
        case TermKind::Sub:
            merge(linear(t.lhs(), constant, scale));
            merge(linear(t.rhs(), constant, -scale));
            break;
        case TermKind::Mul:
            if (t.lhs().is(TermKind::Lit))
                merge(linear(t.rhs(), constant, scale * lit(t.lhs())));
            else if (t.rhs().is(TermKind::Lit))
                merge(linear(t.lhs(), constant, scale * lit(t.rhs())));
            else
                throw std::invalid_argument("nonlinear");
            break;
        case TermKind::Div:
            if (!t.rhs().is(TermKind::Lit)) throw std::invalid_argument("nonlinear");
            merge(linear(t.lhs(), constant, scale / lit(t.rhs())));
            break;
        default: throw std::invalid_argument("unsupported term");
    }
    return out;
}

// Rows for `lhs R rhs`; Gt/Ge are stated as Lt/Le of rhs - lhs.
inline Row row(const Formula& atom, const std::vector<std::string>& vars) {
    Q cl = 0, cr = 0;
    auto l = linear(atom.lhs(), cl);
    auto r = linear(atom.rhs(), cr);
    Row out;
    out.a.assign(vars.size(), 0);
    int sign = (atom.rel() == Rel::Gt || atom.rel() == Rel::Ge) ? -1 : 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        Q lv = l.count(vars[i]) ? l[vars[i]] : Q(0);
        Q rv = r.count(vars[i]) ? r[vars[i]] : Q(0);
        out.a[i] = sign * (lv - rv);
    }
    out.c = sign * (cl - cr);
    switch (atom.rel()) {
        case Rel::Eq: out.kind = Row::Eq; break;
        case Rel::Lt:
        case Rel::Gt: out.kind = Row::Lt; break;
        default: out.kind = Row::Le;
    }
    return out;
}

// Negation of an atom as a disjunction of rows.
inline std::vector<Row> negated(const Formula& atom, const std::vector<std::string>& vars) {
    Row r = row(atom, vars);
    auto flipped = [&](Row::Kind k) {
        Row x = r;
        for (auto& a : x.a) a = -a;
        x.c = -x.c;
        x.kind = k;
        return x;
    };
    switch (r.kind) {
        case Row::Lt: return {flipped(Row::Le)};   // ¬(e < 0) ⇔ -e ≤ 0
        case Row::Le: return {flipped(Row::Lt)};   // ¬(e ≤ 0) ⇔ -e < 0
        case Row::Eq: {
            Row lt = r;
            lt.kind = Row::Lt;
            return {lt, flipped(Row::Lt)};
        }
    }
    return {};
}

// (∧ hyps) ⇒ goal over the reals, all atoms linear.
inline bool valid(const std::vector<Formula>& hyps, const Formula& goal, const std::vector<std::string>& vars) {
    std::vector<Row> base;
    for (const auto& h : hyps) base.push_back(row(h, vars));
    for (const auto& n : negated(goal, vars)) {
        auto sys = base;
        sys.push_back(n);
        if (feasible(sys, vars.size())) return false;
    }
    return true;
}

}  // namespace wp::oracle
