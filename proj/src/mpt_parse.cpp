#include "obstructa/mpt.hpp"

#include "obstructa/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace obstructa::mpt {

namespace {

std::string offset_text(std::int64_t offset)
{
    return offset < 0 ? "b-" + std::to_string(-offset) : "b+" + std::to_string(offset);
}

std::string trim(std::string_view s)
{
    std::size_t a = 0, e = s.size();
    while (a < e && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (e > a && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(a, e - a));
}

// Reads "(b+<d>)" or "(b-<d>)" at s[pos]. Returns false on mismatch.
bool read_offset(std::string_view s, std::size_t& pos, std::int64_t& out)
{
    if (s.substr(pos, 2) != "(b")
        return false;
    pos += 2;
    if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-'))
        return false;
    const bool negative = s[pos++] == '-';
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
    if (pos == start || pos - start > 12 || pos >= s.size() || s[pos] != ')')
        return false;
    out = std::stoll(std::string(s.substr(start, pos - start)));
    if (negative)
        out = -out;
    ++pos;
    return true;
}

// Reads a label at s[pos]; requires "@j" for k-labels unless `bare_k`.
bool read_label(std::string_view s, std::size_t& pos, Label& out, bool bare_k)
{
    Label l;
    std::size_t p = pos;
    if (p < s.size() && s[p] == 'w') {
        ++p;
        if (!read_offset(s, p, l.offset))
            return false;
        out = l;
        pos = p;
        return true;
    }
    if (p >= s.size() || s[p] != 'k')
        return false;
    ++p;
    if (p < s.size() && s[p] == '\'') {
        l.primed = true;
        ++p;
    }
    if (!read_offset(s, p, l.offset))
        return false;
    if (bare_k) {
        l.stage = 1;
        out = l;
        pos = p;
        return true;
    }
    if (p >= s.size() || s[p] != '@')
        return false;
    ++p;
    const std::size_t start = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p])))
        ++p;
    if (p == start || p - start > 6)
        return false;
    l.stage = static_cast<unsigned>(std::stoul(std::string(s.substr(start, p - start))));
    if (l.stage == 0)
        return false;
    out = l;
    pos = p;
    return true;
}

// A coefficient times a word, before the source is attached.
struct Monomial {
    Coefficient coef = Coefficient::one;
    std::vector<Degree> word;
};

using Poly = std::vector<Monomial>;

enum class Tok { lparen, rparen, plus, sq, coef, source, end };

struct Token {
    Tok kind;
    Degree sq = 0;
    Coefficient coef = Coefficient::one;
    Label source;
    std::string text;
};

class Lexer {
public:
    Lexer(std::string_view s, std::size_t line) : s_(s), line_(line) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ == s_.size()) {
                out.push_back({Tok::end, 0, {}, {}, "end of line"});
                return out;
            }
            const char c = s_[pos_];
            if (c == '(' || c == ')' || c == '+') {
                out.push_back({c == '(' ? Tok::lparen : c == ')' ? Tok::rparen : Tok::plus, 0, {}, {},
                               std::string(1, c)});
                ++pos_;
                continue;
            }
            if (s_.substr(pos_, 2) == "Sq") {
                std::size_t p = pos_ + 2;
                const std::size_t start = p;
                while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p])))
                    ++p;
                if (p == start || p - start > 6)
                    throw ParseError(line_, "malformed Steenrod square at '" + rest() + "'");
                Token t{Tok::sq, std::stoull(std::string(s_.substr(start, p - start))), {}, {}, {}};
                if (t.sq == 0)
                    throw ParseError(line_, "Sq0 is not allowed; omit it");
                t.text = std::string(s_.substr(pos_, p - pos_));
                pos_ = p;
                out.push_back(t);
                continue;
            }
            if (s_.substr(pos_, 4) == "w4w4") {
                out.push_back({Tok::coef, 0, Coefficient::w4w4, {}, "w4w4"});
                pos_ += 4;
                continue;
            }
            if (s_.substr(pos_, 2) == "w4" || s_.substr(pos_, 2) == "w8") {
                out.push_back({Tok::coef, 0, s_[pos_ + 1] == '4' ? Coefficient::w4 : Coefficient::w8, {},
                               std::string(s_.substr(pos_, 2))});
                pos_ += 2;
                continue;
            }
            Label l;
            const std::size_t start = pos_;
            if (read_label(s_, pos_, l, false)) {
                out.push_back({Tok::source, 0, {}, l, std::string(s_.substr(start, pos_ - start))});
                continue;
            }
            throw ParseError(line_, "unexpected input at '" + rest() + "'");
        }
    }

private:
    std::string rest() const { return std::string(s_.substr(pos_, 16)); }

    std::string_view s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

Coefficient product(Coefficient a, Coefficient b, std::size_t line)
{
    if (a == Coefficient::one)
        return b;
    if (b == Coefficient::one)
        return a;
    if (a == Coefficient::w4 && b == Coefficient::w4)
        return Coefficient::w4w4;
    throw ParseError(line, "unsupported coefficient product " + std::string(coefficient_name(a)) + " " +
                               std::string(coefficient_name(b)));
}

// Bundle coefficients commute with the cohomology operations only formally;
// the grammar requires them to stand left of every Sq.
Poly multiply(const Poly& a, const Poly& b, std::size_t line)
{
    Poly out;
    for (const auto& x : a)
        for (const auto& y : b) {
            if (!x.word.empty() && y.coef != Coefficient::one)
                throw ParseError(line, "a bundle coefficient must precede every Sq in its term");
            Monomial m{product(x.coef, y.coef, line), x.word};
            m.word.insert(m.word.end(), y.word.begin(), y.word.end());
            out.push_back(std::move(m));
        }
    return out;
}

class TermParser {
public:
    TermParser(std::vector<Token> toks, std::size_t line) : toks_(std::move(toks)), line_(line) {}

    std::vector<Term> relation()
    {
        std::vector<Term> terms;
        do {
            auto t = term();
            terms.insert(terms.end(), t.begin(), t.end());
        } while (accept(Tok::plus));
        expect(Tok::end);
        return terms;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool accept(Tok k)
    {
        if (peek().kind != k)
            return false;
        ++pos_;
        return true;
    }
    void expect(Tok k)
    {
        if (!accept(k))
            throw ParseError(line_, "unexpected '" + peek().text + "'");
    }

    bool starts_factor() const
    {
        const auto k = peek().kind;
        return k == Tok::sq || k == Tok::coef || k == Tok::lparen;
    }

    std::vector<Term> term()
    {
        Poly ops{Monomial{}};
        while (starts_factor())
            ops = multiply(ops, factor(), line_);
        if (peek().kind != Tok::source)
            throw ParseError(line_, "expected a source class before '" + peek().text + "'");
        const Label source = peek().source;
        ++pos_;
        std::vector<Term> out;
        for (auto& m : ops)
            out.push_back(Term{m.coef, SteenrodWord(m.word), source});
        return out;
    }

    Poly factor()
    {
        const Token& t = peek();
        if (t.kind == Tok::sq) {
            ++pos_;
            return {Monomial{Coefficient::one, {t.sq}}};
        }
        if (t.kind == Tok::coef) {
            ++pos_;
            return {Monomial{t.coef, {}}};
        }
        expect(Tok::lparen);
        Poly sum;
        do {
            if (!starts_factor())
                throw ParseError(line_, "expected an operation before '" + peek().text + "'");
            Poly prod{Monomial{}};
            while (starts_factor())
                prod = multiply(prod, factor(), line_);
            sum.insert(sum.end(), prod.begin(), prod.end());
        } while (accept(Tok::plus));
        expect(Tok::rparen);
        return sum;
    }

    std::vector<Token> toks_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

// Cancels repeated terms in pairs, keeping first-occurrence order.
std::vector<Term> reduce_mod2(const std::vector<Term>& terms)
{
    std::map<Term, std::size_t> count;
    for (const auto& t : terms)
        ++count[t];
    std::vector<Term> out;
    for (const auto& t : terms) {
        auto it = count.find(t);
        if (it->second % 2 == 1) {
            out.push_back(t);
            it->second = 0;
        }
    }
    return out;
}

std::string strip_comment(std::string_view line)
{
    const auto hash = line.find('#');
    return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

struct Pending {
    KInvariant k;
    std::string rhs;
    std::size_t line;
};

}  // namespace

std::string Label::to_string() const
{
    if (stage == 0)
        return "w(" + offset_text(offset) + ")";
    return std::string(primed ? "k'(" : "k(") + offset_text(offset) + ")@" + std::to_string(stage);
}

Label Label::parse(std::string_view text)
{
    const std::string s = trim(text);
    Label l;
    std::size_t pos = 0;
    if (!read_label(s, pos, l, false) || pos != s.size())
        throw DomainError("malformed class label '" + s + "'");
    return l;
}

Degree coefficient_degree(Coefficient c)
{
    switch (c) {
    case Coefficient::one: return 0;
    case Coefficient::w4: return 4;
    case Coefficient::w8:
    case Coefficient::w4w4: return 8;
    }
    return 0;
}

std::string_view coefficient_name(Coefficient c)
{
    switch (c) {
    case Coefficient::one: return "1";
    case Coefficient::w4: return "w4";
    case Coefficient::w8: return "w8";
    case Coefficient::w4w4: return "w4w4";
    }
    return "?";
}

std::string Term::to_string() const
{
    std::string out;
    if (coef != Coefficient::one)
        out += std::string(coefficient_name(coef)) + " ";
    for (auto k : word.factors())
        out += "Sq" + std::to_string(k) + " ";
    return out + source.to_string();
}

MptModel parse_relations(std::string_view text)
{
    MptModel model;
    bool have_base = false, have_bundle = false, have_space = false;
    std::vector<std::vector<Pending>> pending;
    std::size_t line_no = 0;
    bool in_stages = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip_comment(raw);
        if (line.empty())
            continue;

        if (line.front() == '+') {
            if (pending.empty() || pending.back().empty())
                throw ParseError(line_no, "continuation line without a relation");
            pending.back().back().rhs += " " + line;
            continue;
        }

        const auto space_at = line.find_first_of(" \t");
        const std::string keyword = line.substr(0, space_at);
        const std::string argument = space_at == std::string::npos ? "" : trim(line.substr(space_at));

        if (keyword == "base" || keyword == "bundle" || keyword == "space") {
            if (in_stages)
                throw ParseError(line_no, "header '" + keyword + "' after the first stage");
            bool& seen = keyword == "base" ? have_base : keyword == "bundle" ? have_bundle : have_space;
            if (seen)
                throw ParseError(line_no, "duplicate header '" + keyword + "'");
            seen = true;
            AffineExpr e;
            try {
                e = AffineExpr::parse(argument);
            } catch (const DomainError& err) {
                throw ParseError(line_no, err.what());
            }
            (keyword == "base" ? model.base : keyword == "bundle" ? model.bundle : model.space) = e;
            continue;
        }

        if (keyword == "stage") {
            if (!have_base || !have_bundle || !have_space)
                throw ParseError(line_no, "headers base, bundle and space must precede the stages");
            in_stages = true;
            const std::string expected = std::to_string(model.stages.size());
            if (argument != expected)
                throw ParseError(line_no, "expected 'stage " + expected + "'");
            model.stages.emplace_back();
            pending.emplace_back();
            continue;
        }

        if (!in_stages)
            throw ParseError(line_no, "expected a header or 'stage 0'");

        const unsigned stage = static_cast<unsigned>(model.stages.size() - 1);
        if (stage == 0) {
            Label l;
            std::size_t pos = 0;
            if (!read_label(line, pos, l, false) || pos != line.size() || l.stage != 0)
                throw ParseError(line_no, "stage 0 lines must be a single class w(b+d)");
            auto& classes = model.stages[0].classes;
            if (std::find(classes.begin(), classes.end(), l) != classes.end())
                throw ParseError(line_no, "duplicate label " + l.to_string());
            classes.push_back(l);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "expected 'k(b+d) = relation'");
        const std::string lhs = trim(line.substr(0, eq));
        Label l;
        std::size_t pos = 0;
        if (!read_label(lhs, pos, l, true) || pos != lhs.size() || l.stage == 0)
            throw ParseError(line_no, "malformed k-invariant label '" + lhs + "'");
        l.stage = stage;
        for (const auto& p : pending.back())
            if (p.k.label == l)
                throw ParseError(line_no, "duplicate label " + l.to_string());
        pending.back().push_back({KInvariant{l, {}}, trim(line.substr(eq + 1)), line_no});
    }

    if (!have_base || !have_bundle || !have_space)
        throw ParseError(line_no, "missing header (base, bundle and space are required)");
    if (model.stages.empty())
        throw ParseError(line_no, "no stages");

    for (std::size_t j = 1; j < pending.size(); ++j) {
        for (auto& p : pending[j]) {
            std::vector<Term> terms;
            if (p.rhs != "0")
                terms = TermParser(Lexer(p.rhs, p.line).run(), p.line).relation();
            for (const auto& t : terms) {
                const bool known = t.source.stage == 0 ? j == 1 && std::find(model.stages[0].classes.begin(),
                                                                          model.stages[0].classes.end(),
                                                                          t.source) != model.stages[0].classes.end()
                                                       : t.source.stage == j - 1 &&
                                                             std::any_of(pending[j - 1].begin(), pending[j - 1].end(),
                                                                         [&](const Pending& q) {
                                                                             return q.k.label == t.source;
                                                                         });
                if (!known)
                    throw ParseError(p.line, "source " + t.source.to_string() + " is not a stage-" +
                                                 std::to_string(j - 1) + " class");
                const std::int64_t total = t.source.offset + static_cast<std::int64_t>(t.word.degree()) +
                                           static_cast<std::int64_t>(coefficient_degree(t.coef));
                if (total != p.k.label.offset + 1)
                    throw ParseError(p.line, "degree imbalance: term '" + t.to_string() + "' has degree " +
                                                 offset_text(total) + " but " + p.k.label.to_string() +
                                                 " needs " + offset_text(p.k.label.offset + 1));
            }
            p.k.relation = reduce_mod2(terms);
            model.stages[j].k_invariants.push_back(std::move(p.k));
        }
    }
    return model;
}

std::string print_relations(const MptModel& model)
{
    std::ostringstream out;
    out << "base " << model.base.to_string() << "\n";
    out << "bundle " << model.bundle.to_string() << "\n";
    out << "space " << model.space.to_string() << "\n";
    for (std::size_t j = 0; j < model.stages.size(); ++j) {
        out << "\nstage " << j << "\n";
        for (const auto& l : model.stages[j].classes)
            out << l.to_string() << "\n";
        for (const auto& k : model.stages[j].k_invariants) {
            const std::string name = k.label.to_string();
            out << name.substr(0, name.find('@')) << " =";
            if (k.relation.empty())
                out << " 0";
            for (std::size_t i = 0; i < k.relation.size(); ++i)
                out << (i ? " + " : " ") << k.relation[i].to_string();
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace obstructa::mpt
