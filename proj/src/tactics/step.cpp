#include "wp/tactics.hpp"

namespace wp::tactics {

namespace {

using lang::SentenceKind;

[[noreturn]] void fail(ErrorCode code, std::string message, const ProofState& s) {
    TacticError e{code, std::move(message), {}, std::nullopt, std::nullopt};
    if (!s.goals.empty()) e.goal = s.goals.front();
    throw TacticFailure(std::move(e));
}

// Marker the next sentence has to carry when a bullet is required.
std::string expected_marker(const ProofState& s) {
    if (s.focused_count() == 0 && !s.bullets.empty()) return s.bullets.back().marker;
    return bullet_marker(static_cast<int>(s.bullets.size()));
}

void pop_finished(ProofState& s) {
    while (!s.bullets.empty() && s.focused_count() == 0 && s.bullets.back().remaining == 0) s.bullets.pop_back();
}

void focus(ProofState& s, const std::optional<std::string>& bullet) {
    int focused = s.focused_count();
    if (!bullet) {
        if (focused > 1 || (focused == 0 && !s.bullets.empty()))
            fail(ErrorCode::BulletExpected, "Expected a bullet `" + expected_marker(s) + "` to focus the next goal.",
                 s);
        return;
    }
    const std::string& b = *bullet;
    if (!s.bullets.empty() && b == s.bullets.back().marker) {
        if (focused > 0)
            fail(ErrorCode::WrongBullet, "Wrong bullet `" + b + "`: the current goal is not finished yet.", s);
        s.bullets.back().remaining--;
        return;
    }
    int depth = static_cast<int>(s.bullets.size());
    if (b == bullet_marker(depth) && focused > 0) {
        if (depth + 1 > kMaxBulletDepth) fail(ErrorCode::BulletTooDeep, "Too many nested bullets.", s);
        s.bullets.push_back({b, focused - 1});
        return;
    }
    fail(ErrorCode::WrongBullet,
         "Wrong bullet `" + b + "`. Expected a bullet `" + expected_marker(s) + "` to focus the next goal.", s);
}

bool informational(SentenceKind k) {
    return k == SentenceKind::Help || k == SentenceKind::ExpandDefinition || k == SentenceKind::ProofBegin;
}

Outcome dispatch(const ProofState& s, const lang::Sentence& st, const Context& cx) {
    const auto& fs = st.formulas;
    std::optional<std::string> by;
    if (st.kind == SentenceKind::ByClause) by = st.reference;
    switch (st.effective_kind()) {
        case SentenceKind::Take:
            return take(s, st.groups, cx);
        case SentenceKind::AssumeThat:
            return assume_that(s, fs.at(0), st.label, cx);
        case SentenceKind::Choose:
            return choose(s, st.name, *st.term, cx);
        case SentenceKind::ShowBoth:
            return show_both(s, fs.at(0), fs.at(1), cx);
        case SentenceKind::EitherOr:
            return either_or(s, fs.at(0), fs.at(1), cx);
        case SentenceKind::Case:
            return case_(s, fs.at(0), cx);
        case SentenceKind::ConcludeThat:
            if (st.chain) return conclude_that(s, *st.chain, by, cx);
            return conclude_that(s, fs.at(0), by, cx);
        case SentenceKind::ItHoldsThat:
            return it_holds_that(s, fs.at(0), st.label, by, cx);
        case SentenceKind::SufficesToShow:
            return suffices_to_show(s, fs.at(0), by, cx);
        case SentenceKind::NeedToShow:
            return need_to_show(s, fs.at(0), cx);
        case SentenceKind::ExpandDefinition:
            return expand_definition(s, st.name, fs.at(0), cx);
        case SentenceKind::Help:
            return help(s, cx);
        case SentenceKind::UseInduction:
            return use_induction(s, st.name, cx);
        case SentenceKind::BaseCase:
            return base_case(s, fs.at(0), cx);
        case SentenceKind::InductionStep:
            return induction_step(s, fs.at(0), cx);
        case SentenceKind::ProofBegin:
            return Outcome{s, {}};
        case SentenceKind::Qed:
            if (!s.complete()) fail(ErrorCode::ProofNotFinished, "Proof is not finished.", s);
            return Outcome{s, {}};
        case SentenceKind::LemmaHeader:
        case SentenceKind::ByClause:
            break;
    }
    fail(ErrorCode::UnexpectedSentence, "A new lemma cannot start before the proof is finished.", s);
}

}  // namespace

Outcome step(const ProofState& s, const lang::Sentence& sentence, const Context& cx) {
    try {
        SentenceKind k = sentence.effective_kind();
        ProofState work = s;
        pop_finished(work);
        if (k == SentenceKind::Qed || k == SentenceKind::LemmaHeader) {
            Outcome o = dispatch(work, sentence, cx);
            return o;
        }
        if (!informational(k) || sentence.bullet) {
            if (work.goals.empty())
                fail(ErrorCode::NoGoals, "There are no goals left. Finish the proof with `Qed.`", work);
            focus(work, sentence.bullet);
        }
        Outcome o = dispatch(work, sentence, cx);
        pop_finished(o.state);
        return o;
    } catch (TacticFailure& f) {
        f.error.span = sentence.span;
        throw;
    }
}

}  // namespace wp::tactics
