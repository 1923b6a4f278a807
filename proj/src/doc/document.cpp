#include "wp/document.hpp"

namespace wp::doc {

const char* block_kind_name(BlockKind k) {
    switch (k) {
        case BlockKind::Text: return "text";
        case BlockKind::Code: return "code";
        case BlockKind::InputArea: return "input-area";
        case BlockKind::Hint: return "hint";
    }
    return "?";
}

bool Block::same(const Block& o) const {
    if (kind != o.kind || text != o.text || title != o.title || children.size() != o.children.size()) return false;
    for (std::size_t i = 0; i < children.size(); ++i)
        if (!children[i].same(o.children[i])) return false;
    return true;
}

bool WaterDoc::same(const WaterDoc& o) const {
    if (version != o.version || preamble != o.preamble || blocks.size() != o.blocks.size()) return false;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (!blocks[i].same(o.blocks[i])) return false;
    return true;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

bool preamble_line(std::string_view line) {
    return line.size() >= 2 && line[0] == '#' && line[1] >= 'a' && line[1] <= 'z';
}

std::optional<std::string> hint_title(std::string_view t) {
    constexpr std::string_view open = "<hint title=\"";
    if (t.substr(0, open.size()) != open || t.size() < open.size() + 2 || t.substr(t.size() - 2) != "\">")
        return std::nullopt;
    return std::string(t.substr(open.size(), t.size() - open.size() - 2));
}

class DocParser {
public:
    WaterDoc run(std::string_view text) {
        auto lines = split_lines(text);
        std::size_t i = 0;
        if (i < lines.size() && lines[i].substr(0, 4) == "#wp ") {
            doc_.version = std::string(trim(lines[i].substr(4)));
            ++i;
        }
        while (i < lines.size() && preamble_line(lines[i])) doc_.preamble.emplace_back(trim(lines[i++]));

        for (; i < lines.size(); ++i) line(lines[i], static_cast<int>(i) + 1);

        if (code_) throw DocumentError(DocumentError::Kind::UnbalancedMarker, code_line_, "unterminated code block");
        flush_text();
        if (container_)
            throw DocumentError(DocumentError::Kind::UnbalancedMarker, container_line_,
                                std::string("`") + (container_->kind == BlockKind::Hint ? "<hint>" : "<input-area>") +
                                    "` is never closed");
        return std::move(doc_);
    }

private:
    void line(std::string_view raw, int number) {
        std::string_view t = trim(raw);
        if (code_) {
            if (t == "```") {
                target().push_back(std::move(*code_));
                code_.reset();
            } else {
                code_->text.append(raw).push_back('\n');
            }
            return;
        }
        if (other_fence_) {
            if (t == "```") other_fence_ = false;
            text(raw, number);
            return;
        }
        if (t.substr(0, 3) == "```") {
            if (trim(t.substr(3)) == "proof") {
                flush_text();
                code_ = Block::make_code("");
                code_->line = number + 1;
                code_line_ = number;
            } else {
                other_fence_ = true;
                text(raw, number);
            }
            return;
        }
        if (t == "<input-area>" || hint_title(t)) {
            if (container_) throw DocumentError(DocumentError::Kind::NestedArea, number, "areas cannot be nested");
            flush_text();
            container_ = Block{};
            if (t == "<input-area>") {
                container_->kind = BlockKind::InputArea;
            } else {
                container_->kind = BlockKind::Hint;
                container_->title = *hint_title(t);
            }
            container_->line = number;
            container_line_ = number;
            return;
        }
        bool close_area = t == "</input-area>" || t == "<\\input-area>";
        if (close_area || t == "</hint>") {
            BlockKind expected = close_area ? BlockKind::InputArea : BlockKind::Hint;
            if (!container_ || container_->kind != expected)
                throw DocumentError(DocumentError::Kind::UnbalancedMarker, number,
                                    std::string("unexpected `") + std::string(t) + "`");
            flush_text();
            doc_.blocks.push_back(std::move(*container_));
            container_.reset();
            return;
        }
        text(raw, number);
    }

    void text(std::string_view raw, int number) {
        if (!text_) {
            text_ = Block::make_text("");
            text_->line = number;
        }
        text_->text.append(raw).push_back('\n');
    }

    void flush_text() {
        if (!text_) return;
        target().push_back(std::move(*text_));
        text_.reset();
    }

    std::vector<Block>& target() { return container_ ? container_->children : doc_.blocks; }

    WaterDoc doc_;
    std::optional<Block> text_;
    std::optional<Block> code_;
    std::optional<Block> container_;
    int code_line_ = 0;
    int container_line_ = 0;
    bool other_fence_ = false;
};

void render(const Block& b, std::string& out) {
    switch (b.kind) {
        case BlockKind::Text:
            out += b.text;
            break;
        case BlockKind::Code:
            out += "```proof\n" + b.text + "```\n";
            break;
        case BlockKind::InputArea:
            out += "<input-area>\n";
            for (const auto& c : b.children) render(c, out);
            out += "</input-area>\n";
            break;
        case BlockKind::Hint:
            out += "<hint title=\"" + b.title + "\">\n";
            for (const auto& c : b.children) render(c, out);
            out += "</hint>\n";
            break;
    }
}

}  // namespace

WaterDoc parse_document(std::string_view text) { return DocParser().run(text); }

std::string render_document(const WaterDoc& doc) {
    std::string out;
    if (!doc.version.empty()) out += "#wp " + doc.version + "\n";
    for (const auto& p : doc.preamble) out += p + "\n";
    for (const auto& b : doc.blocks) render(b, out);
    return out;
}

WaterDoc extract_sheet(const WaterDoc& master) {
    WaterDoc sheet = master;
    for (auto& b : sheet.blocks)
        if (b.kind == BlockKind::InputArea) b.children = {Block::make_code("")};
    return parse_document(render_document(sheet));
}

std::variant<WaterDoc, TamperReport> splice_submission(const WaterDoc& original, const WaterDoc& submission) {
    if (original.version != submission.version || original.preamble != submission.preamble)
        return TamperReport{0, "the preamble was changed"};
    std::size_t n = std::min(original.blocks.size(), submission.blocks.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Block& a = original.blocks[i];
        const Block& b = submission.blocks[i];
        if (a.kind != b.kind)
            return TamperReport{i, std::string("expected a ") + block_kind_name(a.kind) + " block, found a " +
                                       block_kind_name(b.kind) + " block"};
        if (a.kind != BlockKind::InputArea && !a.same(b))
            return TamperReport{i, std::string("the ") + block_kind_name(a.kind) + " block was changed"};
    }
    if (original.blocks.size() != submission.blocks.size())
        return TamperReport{n, original.blocks.size() > n ? "a block was removed" : "a block was added"};
    WaterDoc out = original;
    for (std::size_t i = 0; i < n; ++i)
        if (out.blocks[i].kind == BlockKind::InputArea) out.blocks[i].children = submission.blocks[i].children;
    return parse_document(render_document(out));
}

}  // namespace wp::doc
