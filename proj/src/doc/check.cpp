#include "wp/document.hpp"
#include "wp/kernel.hpp"

namespace wp::doc {

const char* status_name(SentenceStatus s) {
    switch (s) {
        case SentenceStatus::Ok: return "ok";
        case SentenceStatus::Error: return "error";
        case SentenceStatus::Skipped: return "skipped";
    }
    return "?";
}

std::vector<Diagnostic> CheckResult::diagnostics() const {
    std::vector<Diagnostic> out;
    for (const auto& s : sentences)
        if (s.diagnostic) out.push_back(*s.diagnostic);
    return out;
}

namespace {

struct Piece {
    const Block* block;
    std::optional<int> area;
};

void collect(const std::vector<Block>& blocks, std::vector<Piece>& pieces, std::vector<AreaReport>& areas) {
    for (const auto& b : blocks) {
        if (b.kind == BlockKind::Code) {
            pieces.push_back({&b, std::nullopt});
        } else if (b.kind == BlockKind::InputArea) {
            int index = static_cast<int>(areas.size());
            areas.push_back({-1, false, b.line});
            // An empty area still marks its position.
            pieces.push_back({nullptr, index});
            for (const auto& c : b.children)
                if (c.kind == BlockKind::Code) pieces.push_back({&c, index});
        }
    }
}

bool before(const lang::SourceSpan& s, lang::Position p) {
    return s.end_line < p.line || (s.end_line == p.line && s.end_col <= p.col);
}

class Checker {
public:
    Checker(const Environment& env, const CheckOptions& options) : base_(env), env_(env), options_(options) {}

    CheckResult run(const WaterDoc& doc) {
        std::vector<Piece> pieces;
        collect(doc.blocks, pieces, result_.areas);
        for (const auto& p : pieces) {
            if (!p.block) {
                attach_area(*p.area);
                continue;
            }
            for (auto& ps : lang::parse_script_lenient(p.block->text, &base_, {p.block->line, 1})) sentence(ps, p.area);
        }
        finish_unit();
        for (std::size_t a = 0; a < result_.areas.size(); ++a) {
            AreaReport& area = result_.areas[a];
            if (area.unit < 0) continue;
            bool ok = result_.units[area.unit].complete;
            for (const auto& s : result_.sentences)
                if (s.area == static_cast<int>(a) && s.status != SentenceStatus::Ok) ok = false;
            area.green = ok;
        }
        return std::move(result_);
    }

private:
    void attach_area(int area) {
        if (unit_ < 0) return;
        result_.areas[area].unit = unit_;
        result_.units[unit_].areas.push_back(area);
    }

    void sentence(const lang::ParsedSentence& ps, std::optional<int> area) {
        SentenceReport r;
        r.span = ps.span;
        r.text = ps.text;
        r.area = area;

        if (ps.sentence && ps.sentence->kind == lang::SentenceKind::LemmaHeader) {
            start_unit(*ps.sentence, r);
            result_.sentences.push_back(std::move(r));
            return;
        }
        r.unit = unit_;
        if (unit_ >= 0 && failed_) {
            r.status = SentenceStatus::Skipped;
        } else if (ps.error) {
            error(r, Diagnostic{"SyntaxError", ps.error->what(), ps.error->span, ps.error->hint});
        } else if (unit_ < 0) {
            error(r, Diagnostic{"UnexpectedSentence", "Expected `Lemma ...` before the proof.", ps.span, {}});
        } else {
            r.before = state_;
            try {
                tactics::Outcome o = tactics::step(*state_, *ps.sentence, *context_);
                state_ = o.state;
                r.after = o.state;
                r.notes = std::move(o.notes);
                if (ps.sentence->kind == lang::SentenceKind::Qed) result_.units[unit_].complete = true;
            } catch (const tactics::TacticFailure& f) {
                error(r, Diagnostic{tactics::error_code_name(f.error.code), f.error.message, f.error.span, {}});
            }
        }
        result_.sentences.push_back(std::move(r));
    }

    void error(SentenceReport& r, Diagnostic d) {
        r.status = SentenceStatus::Error;
        r.diagnostic = d;
        if (unit_ >= 0) {
            failed_ = true;
            auto& u = result_.units[unit_];
            if (!u.first_error) u.first_error = d;
        }
    }

    void start_unit(const lang::Sentence& s, SentenceReport& r) {
        finish_unit();
        unit_ = static_cast<int>(result_.units.size());
        result_.units.push_back({s.name, s.span, false, std::nullopt, {}});
        r.unit = unit_;
        failed_ = false;
        state_.reset();

        context_.emplace(tactics::Context{env_, options_.budget});
        if (options_.unit_timeout)
            context_->budget.deadline = std::chrono::steady_clock::now() + *options_.unit_timeout;

        const Formula& statement = s.formulas.at(0);
        try {
            if (env_.lemma(s.name)) throw SortError("A lemma named `" + s.name + "` already exists.");
            check_formula(statement, Scope{}, env_);
        } catch (const std::exception& e) {
            error(r, Diagnostic{"SortMismatch", e.what(), s.span, {}});
            return;
        }
        pending_ = Lemma{s.name, statement};
        state_ = ProofState::start(statement);
        r.after = state_;
    }

    // Later units see this lemma whether or not its proof was finished.
    void finish_unit() {
        if (pending_) env_.add_lemma(*pending_);
        pending_.reset();
    }

    const Environment& base_;
    Environment env_;
    CheckOptions options_;
    CheckResult result_;
    int unit_ = -1;
    bool failed_ = false;
    std::optional<ProofState> state_;
    std::optional<tactics::Context> context_;
    std::optional<Lemma> pending_;
};

}  // namespace

CheckResult check_document(const WaterDoc& doc, const Environment& env, const CheckOptions& options) {
    return Checker(env, options).run(doc);
}

GoalsAt goals_at(const CheckResult& result, lang::Position pos) {
    GoalsAt out;
    for (const auto& s : result.sentences) {
        if (!before(s.span, pos)) break;
        if (s.unit >= 0 && s.unit < static_cast<int>(result.units.size()))
            out.lemma = result.units[s.unit].lemma;
        else
            out.lemma.reset();
        if (s.after)
            out.state = s.after;
        else if (s.before)
            out.state = s.before;
        else if (s.status != SentenceStatus::Skipped)
            out.state.reset();
    }
    return out;
}

}  // namespace wp::doc
