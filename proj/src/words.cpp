#include "grouplab/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "grouplab/error.hpp"

namespace grouplab::words {

Word Word::letter(GenIndex g, Int exp) {
    Word w;
    w.append(g, exp);
    return w;
}

Word Word::from_syllables(const std::vector<Syllable>& syllables) {
    Word w;
    for (const auto& s : syllables) w.append(s.gen, s.exp);
    return w;
}

Word Word::from_letters(const std::vector<int>& letters) {
    Word w;
    for (int l : letters) {
        if (l == 0) throw InputError("letter 0 is not a generator");
        w.append(static_cast<GenIndex>(std::abs(l) - 1), l > 0 ? 1 : -1);
    }
    return w;
}

Int Word::length() const {
    Int n = 0;
    for (const auto& s : syllables_) n = checked_add(n, s.exp < 0 ? -s.exp : s.exp);
    return n;
}

std::size_t Word::rank_used() const {
    std::size_t r = 0;
    for (const auto& s : syllables_) r = std::max(r, s.gen + 1);
    return r;
}

void Word::append(GenIndex g, Int exp) {
    if (exp == 0) return;
    if (!syllables_.empty() && syllables_.back().gen == g) {
        Int e = checked_add(syllables_.back().exp, exp);
        if (e == 0)
            syllables_.pop_back();
        else
            syllables_.back().exp = e;
        return;
    }
    syllables_.push_back({g, exp});
}

void Word::append(const Word& w) {
    for (const auto& s : w.syllables_) append(s.gen, s.exp);
}

Word Word::inverse() const {
    Word w;
    w.syllables_.reserve(syllables_.size());
    for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) w.syllables_.push_back({it->gen, -it->exp});
    return w;
}

Word Word::pow(Int k) const {
    if (k == 0 || is_identity()) return {};
    Word base = k > 0 ? *this : inverse();
    Int n = k > 0 ? k : -k;
    Word out;
    for (Int i = 0; i < n; ++i) out.append(base);
    return out;
}

Word multiply(const Word& u, const Word& v) {
    Word w = u;
    w.append(v);
    return w;
}

Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

Word commutator(const Word& u, const Word& v) {
    Word w = u.inverse();
    w.append(v.inverse());
    w.append(u);
    w.append(v);
    return w;
}

Word substitute(const Word& w, const std::vector<Word>& images) {
    Word out;
    for (const auto& s : w.syllables()) {
        if (s.gen >= images.size()) throw InputError("word uses a generator without an image");
        out.append(images[s.gen].pow(s.exp));
    }
    return out;
}

std::vector<Int> exponent_sums(const Word& w, std::size_t rank) {
    std::vector<Int> sums(rank, 0);
    for (const auto& s : w.syllables()) {
        if (s.gen >= rank) throw InputError("word uses a generator outside the declared alphabet");
        sums[s.gen] = checked_add(sums[s.gen], s.exp);
    }
    return sums;
}

bool is_valid_identifier(std::string_view name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

namespace {

class WordParser {
public:
    WordParser(std::string_view text, std::size_t line, std::size_t col0, const std::map<std::string, GenIndex>& gens)
        : text_(text), line_(line), col0_(col0), gens_(gens) {}

    Word parse_all() {
        skip_ws();
        Word w = parse_word();
        skip_ws();
        if (pos_ < text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + pos_ + 1); }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
    }

    bool at_term_start() const {
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return c == '[' || c == '(' || std::isalpha(static_cast<unsigned char>(c));
    }

    Word parse_word() {
        skip_ws();
        if (!at_term_start()) {
            if (pos_ >= text_.size()) fail("expected a word");
            fail(std::string("unexpected character '") + text_[pos_] + "'");
        }
        Word w;
        while (true) {
            skip_ws();
            if (!at_term_start()) break;
            w.append(parse_term());
        }
        return w;
    }

    Word parse_term() {
        Word atom = parse_atom();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            skip_ws();
            Int e = parse_int();
            return atom.pow(e);
        }
        return atom;
    }

    Int parse_int() {
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (digits == pos_) {
            pos_ = start;
            fail("expected an integer exponent");
        }
        Int value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc()) {
            pos_ = start;
            fail("exponent out of range");
        }
        if (value == 0) {
            pos_ = start;
            fail("zero exponent");
        }
        return value;
    }

    Word parse_atom() {
        char c = text_[pos_];
        if (c == '[') {
            ++pos_;
            Word u = parse_word();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ',') fail("expected ',' in commutator");
            ++pos_;
            Word v = parse_word();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ']') fail("expected ']'");
            ++pos_;
            return commutator(u, v);
        }
        if (c == '(') {
            ++pos_;
            Word u = parse_word();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return u;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        auto it = gens_.find(name);
        if (it == gens_.end()) {
            pos_ = start;
            fail("undeclared generator '" + name + "'");
        }
        return Word::letter(it->second);
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t col0_;
    const std::map<std::string, GenIndex>& gens_;
    std::size_t pos_ = 0;
};

std::string_view trim_left(std::string_view s, std::size_t& offset) {
    while (offset < s.size() && (s[offset] == ' ' || s[offset] == '\t')) ++offset;
    return s.substr(offset);
}

}  // namespace

ParseOutput parse_presentation_with_diagnostics(std::string_view text) {
    ParseOutput out;
    std::map<std::string, GenIndex> index;
    bool have_gens = false;
    std::set<Word> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        std::size_t offset = 0;
        std::string_view rest = trim_left(line, offset);
        if (!rest.empty() && rest[0] != '#') {
            if (rest.starts_with("gens:")) {
                if (have_gens) throw ParseError("'gens:' declared more than once", line_no, offset + 1);
                have_gens = true;
                std::size_t col = offset + 5;
                std::string_view body = line.substr(col);
                std::size_t i = 0;
                while (i < body.size()) {
                    while (i < body.size() && (body[i] == ' ' || body[i] == '\t')) ++i;
                    if (i >= body.size()) break;
                    std::size_t start = i;
                    while (i < body.size() && body[i] != ' ' && body[i] != '\t') ++i;
                    std::string name(body.substr(start, i - start));
                    if (!is_valid_identifier(name))
                        throw ParseError("invalid generator name '" + name + "'", line_no, col + start + 1);
                    if (index.count(name))
                        throw ParseError("duplicate generator '" + name + "'", line_no, col + start + 1);
                    index.emplace(name, out.presentation.generators.size());
                    out.presentation.generators.push_back(name);
                }
            } else if (rest.starts_with("rel:")) {
                if (!have_gens) throw ParseError("'rel:' before 'gens:'", line_no, offset + 1);
                std::size_t col = offset + 4;
                WordParser parser(line.substr(col), line_no, col, index);
                Word w = parser.parse_all();
                if (!seen.insert(w).second)
                    out.warnings.push_back("line " + std::to_string(line_no) + ": duplicate relator");
                if (w.is_identity())
                    out.warnings.push_back("line " + std::to_string(line_no) + ": relator reduces to the identity");
                out.presentation.relators.push_back(std::move(w));
            } else {
                throw ParseError("expected 'gens:', 'rel:' or a '#' comment", line_no, offset + 1);
            }
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (!have_gens) throw ParseError("missing 'gens:' line", line_no, 1);
    return out;
}

Presentation parse_presentation(std::string_view text) { return parse_presentation_with_diagnostics(text).presentation; }

Word parse_word(std::string_view text, const std::vector<std::string>& generators) {
    std::map<std::string, GenIndex> index;
    for (GenIndex i = 0; i < generators.size(); ++i) index.emplace(generators[i], i);
    return WordParser(text, 1, 0, index).parse_all();
}

std::string render(const Word& w, const std::vector<std::string>& generators) {
    if (w.is_identity()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& s : w.syllables()) {
        if (!first) os << ' ';
        first = false;
        os << (s.gen < generators.size() ? generators[s.gen] : "x" + std::to_string(s.gen));
        if (s.exp != 1) os << '^' << s.exp;
    }
    return os.str();
}

std::string render(const Presentation& p) {
    std::ostringstream os;
    os << "gens:";
    for (const auto& g : p.generators) os << ' ' << g;
    os << '\n';
    for (const auto& r : p.relators) {
        // The identity has no spelling in the grammar; write it as x x^-1.
        if (r.is_identity() && !p.generators.empty())
            os << "rel: " << p.generators[0] << ' ' << p.generators[0] << "^-1\n";
        else
            os << "rel: " << render(r, p.generators) << '\n';
    }
    return os.str();
}

}  // namespace grouplab::words
