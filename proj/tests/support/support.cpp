#include "support.hpp"

#include <fstream>
#include <sstream>

#include "wp/print.hpp"

namespace wp::testing {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string data_file(const std::string& name) { return read_file(std::string(WP_TEST_DATA) + "/" + name); }

std::string seed_library_text() { return read_file(std::string(WP_LIBRARY_DIR) + "/analysis.wpl"); }

Environment seed_env() { return doc::load_library(seed_library_text()); }

Environment generator_env() {
    Environment env = seed_env();
    doc::extend_library(env, "#predicate P : ℝ\n");
    return env;
}

namespace {

bool same_wrapper(const std::optional<Wrapper>& a, const std::optional<Wrapper>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || (a->kind == b->kind && a->expected == b->expected);
}

}  // namespace

bool same_goal(const Goal& a, const Goal& b) {
    if (!(a.target == b.target) || !same_wrapper(a.wrapper, b.wrapper)) return false;
    if (a.variables.size() != b.variables.size() || a.hypotheses.size() != b.hypotheses.size()) return false;
    for (std::size_t i = 0; i < a.variables.size(); ++i)
        if (a.variables[i].name != b.variables[i].name || !(a.variables[i].sort == b.variables[i].sort)) return false;
    for (std::size_t i = 0; i < a.hypotheses.size(); ++i) {
        const auto &x = a.hypotheses[i], &y = b.hypotheses[i];
        if (x.label != y.label || x.origin != y.origin || !(x.statement == y.statement)) return false;
    }
    return true;
}

bool same_state(const ProofState& a, const ProofState& b) {
    if (a.goals.size() != b.goals.size() || a.bullets != b.bullets) return false;
    for (std::size_t i = 0; i < a.goals.size(); ++i)
        if (!same_goal(a.goals[i], b.goals[i])) return false;
    return true;
}

int Gen::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool Gen::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Term Gen::leaf() {
    static const std::vector<std::string> free = {"x", "y", "z", "ε", "a"};
    if (coin(0.4)) return Term::lit(uniform(0, 9));
    if (!bound_.empty() && coin(0.5)) return Term::var(pick(bound_));
    return Term::var(pick(free));
}

Term Gen::term(int depth, bool linear) {
    if (depth <= 0 || coin(0.3)) return leaf();
    switch (uniform(0, linear ? 4 : 6)) {
        case 0: return Term::neg(term(depth - 1, linear));
        case 1: return Term::add(term(depth - 1, linear), term(depth - 1, linear));
        case 2: return Term::sub(term(depth - 1, linear), term(depth - 1, linear));
        case 3: return Term::mul(Term::lit(uniform(1, 9)), term(depth - 1, linear));
        case 4: return Term::div(term(depth - 1, linear), Term::lit(uniform(1, 9)));
        case 5: return Term::mul(term(depth - 1, linear), term(depth - 1, linear));
        default: return Term::app("f", {term(depth - 1, linear)});
    }
}

Sort Gen::sort() {
    switch (uniform(0, 3)) {
        case 0: return Sort::nat();
        case 1: return Sort::integer();
        default: return Sort::real();
    }
}

std::string Gen::name() {
    static const std::vector<std::string> names = {"x", "y", "n", "m", "δ", "b", "c", "k"};
    return pick(names);
}

Interval Gen::interval() {
    int lo = uniform(0, 5);
    return Interval{Term::lit(lo), Term::lit(lo + uniform(1, 5)), coin(), coin()};
}

Formula Gen::formula(int depth) {
    static const std::vector<Rel> rels = {Rel::Eq, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge};
    if (depth <= 0 || coin(0.25)) {
        switch (uniform(0, 5)) {
            case 0: return Formula::in_interval(term(1), interval());
            case 1: return Formula::pred("P", {term(1)});
            case 2:
                return Formula::def_app(coin() ? "is_sup" : "is_upper_bound", {interval(), term(1)});
            default: return Formula::atom(pick(rels), term(2), term(2));
        }
    }
    switch (uniform(0, 6)) {
        case 0: return Formula::negation(formula(depth - 1));
        case 1: return Formula::conj(formula(depth - 1), formula(depth - 1));
        case 2: return Formula::disj(formula(depth - 1), formula(depth - 1));
        case 3: return Formula::implies(formula(depth - 1), formula(depth - 1));
        case 4: return Formula::iff(formula(depth - 1), formula(depth - 1));
        default: {
            std::string v = name();
            Sort s = sort();
            bound_.push_back(v);
            Formula body = formula(depth - 1);
            bound_.pop_back();
            return coin() ? Formula::forall(v, s, body) : Formula::exists(v, s, body);
        }
    }
}

chains::Chain Gen::chain() {
    static const std::vector<Rel> up = {Rel::Eq, Rel::Lt, Rel::Le};
    static const std::vector<Rel> down = {Rel::Eq, Rel::Gt, Rel::Ge};
    const auto& rels = coin() ? up : down;
    chains::Chain c{term(2), {}};
    int n = uniform(1, 4);
    for (int i = 0; i < n; ++i) c.links.push_back({pick(rels), term(2)});
    return c;
}

lang::Sentence Gen::sentence() {
    using K = lang::SentenceKind;
    static const std::vector<K> kinds = {
        K::Take,         K::AssumeThat, K::Choose,           K::ShowBoth,   K::EitherOr,   K::Case,
        K::ConcludeThat, K::ItHoldsThat, K::SufficesToShow,  K::NeedToShow, K::ByClause,   K::ExpandDefinition,
        K::Help,         K::UseInduction, K::BaseCase,       K::InductionStep, K::LemmaHeader, K::ProofBegin,
        K::Qed};
    static const std::vector<std::string> bullets = {"-", "+", "*", "--"};
    lang::Sentence s;
    s.kind = pick(kinds);
    if (coin(0.2) && s.kind != K::LemmaHeader && s.kind != K::ProofBegin && s.kind != K::Qed) s.bullet = pick(bullets);
    auto label = [&] {
        if (coin(0.3)) s.label = "h" + std::to_string(uniform(1, 9));
    };
    auto statement = [&] {
        if (coin(0.4))
            s.chain = chain();
        else
            s.formulas.push_back(formula(2));
    };
    switch (s.kind) {
        case K::Take: {
            std::vector<std::string> used;
            int groups = uniform(1, 2);
            for (int g = 0; g < groups; ++g) {
                lang::TakeGroup tg;
                int names = uniform(1, 2);
                for (int i = 0; i < names; ++i) {
                    std::string n = name();
                    if (std::find(used.begin(), used.end(), n) != used.end()) continue;
                    used.push_back(n);
                    tg.names.push_back(n);
                }
                if (tg.names.empty()) continue;
                tg.sort = sort();
                s.groups.push_back(tg);
            }
            break;
        }
        case K::AssumeThat:
        case K::ItHoldsThat:
            s.formulas.push_back(formula(2));
            label();
            break;
        case K::Choose:
            s.name = name();
            s.term = term(2);
            break;
        case K::ShowBoth:
        case K::EitherOr:
            s.formulas.push_back(formula(2));
            s.formulas.push_back(formula(2));
            break;
        case K::Case:
        case K::SufficesToShow:
        case K::NeedToShow:
        case K::BaseCase:
        case K::InductionStep:
            s.formulas.push_back(formula(2));
            break;
        case K::ConcludeThat: statement(); break;
        case K::ByClause: {
            static const std::vector<K> inner = {K::ItHoldsThat, K::ConcludeThat, K::SufficesToShow};
            s.inner = pick(inner);
            s.reference = coin() ? "IVT" : "h" + std::to_string(uniform(1, 9));
            if (s.inner == K::ConcludeThat) {
                statement();
            } else {
                s.formulas.push_back(formula(2));
                if (s.inner == K::ItHoldsThat) label();
            }
            break;
        }
        case K::ExpandDefinition:
            s.name = coin() ? "upper bound" : "supremum";
            s.formulas.push_back(formula(2));
            break;
        case K::UseInduction: s.name = name(); break;
        case K::LemmaHeader:
            s.name = "lemma_" + std::to_string(uniform(1, 99));
            s.formulas.push_back(formula(3));
            break;
        default: break;
    }
    return s;
}

std::string Gen::code_text() {
    static const Environment env = generator_env();
    std::string out;
    int n = uniform(0, 4);
    for (int i = 0; i < n; ++i) out += std::string(uniform(0, 4), ' ') + lang::print_sentence(sentence(), &env) + "\n";
    return out;
}

std::string Gen::text_lines() {
    static const std::vector<std::string> lines = {
        "# Exercise", "Prove the following statement.", "", "Let ε > 0 be given.", "## Part (b)",
        "Use `Take` to introduce variables.", "    indented text", "~~~", "* a list item", "Is 1 the supremum of [0,1)?"};
    std::string out;
    int n = uniform(1, 3);
    for (int i = 0; i < n; ++i) out += pick(lines) + "\n";
    if (coin(0.15)) out += "```python\nprint(1)\n```\n";
    return out;
}

doc::WaterDoc Gen::document() {
    doc::WaterDoc d;
    if (coin(0.7)) d.version = "1";
    if (coin(0.5)) d.preamble.push_back("#title Sheet " + std::to_string(uniform(1, 9)));
    if (coin(0.3)) d.preamble.push_back("#library analysis");
    bool last_text = false;
    auto push_text = [&](std::vector<doc::Block>& out, bool& last) {
        if (last) return;
        out.push_back(doc::Block::make_text(text_lines()));
        last = true;
    };
    int n = uniform(1, 8);
    for (int i = 0; i < n; ++i) {
        switch (uniform(0, 3)) {
            case 0: push_text(d.blocks, last_text); break;
            case 1:
                d.blocks.push_back(doc::Block::make_code(code_text()));
                last_text = false;
                break;
            default: {
                doc::Block c;
                c.kind = coin() ? doc::BlockKind::InputArea : doc::BlockKind::Hint;
                if (c.kind == doc::BlockKind::Hint) c.title = "Hint " + std::to_string(uniform(1, 9));
                bool inner_text = false;
                int m = uniform(0, 3);
                for (int j = 0; j < m; ++j) {
                    if (coin()) {
                        push_text(c.children, inner_text);
                    } else {
                        c.children.push_back(doc::Block::make_code(code_text()));
                        inner_text = false;
                    }
                }
                d.blocks.push_back(std::move(c));
                last_text = false;
            }
        }
    }
    return d;
}

Formula Gen::linear_atom() {
    static const std::vector<std::string> vars = {"x", "y", "z", "w"};
    static const std::vector<Rel> rels = {Rel::Eq, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge};
    auto side = [&] {
        Term t = Term::lit(uniform(-5, 5));
        int k = uniform(1, 3);
        for (int i = 0; i < k; ++i) {
            int c = uniform(-4, 4);
            if (c == 0) continue;
            t = Term::add(t, Term::mul(Term::lit(c), Term::var(pick(vars))));
        }
        return t;
    };
    return Formula::atom(pick(rels), side(), side());
}

}  // namespace wp::testing
