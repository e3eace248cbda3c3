#include "atd/fp_group.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace atd {

Word free_reduce(const Word &w)
{
    Word out;
    out.reserve(w.size());
    for (Letter x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

Word cyclic_reduce(const Word &w)
{
    Word r = free_reduce(w);
    std::size_t i = 0, j = r.size();
    while (j - i >= 2 && r[i] == -r[j - 1]) {
        ++i;
        --j;
    }
    return Word(r.begin() + static_cast<std::ptrdiff_t>(i), r.begin() + static_cast<std::ptrdiff_t>(j));
}

Word inverse(const Word &w)
{
    Word r(w.rbegin(), w.rend());
    for (auto &x : r)
        x = -x;
    return r;
}

Word power(const Word &w, long long k)
{
    Word base = k < 0 ? inverse(w) : w;
    Word r;
    for (long long i = 0; i < (k < 0 ? -k : k); ++i)
        r.insert(r.end(), base.begin(), base.end());
    return free_reduce(r);
}

Word concat(const Word &a, const Word &b)
{
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return free_reduce(r);
}

Word conjugate(const Word &u, const Word &by) { return concat(concat(inverse(by), u), by); }

Word commutator(const Word &u, const Word &v) { return concat(concat(inverse(u), inverse(v)), concat(u, v)); }

std::size_t FpPresentation::generator_index(std::string_view name) const
{
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == name)
            return i;
    throw std::invalid_argument("undeclared generator '" + std::string(name) + "'");
}

std::string FpPresentation::word_to_string(const Word &w) const
{
    if (w.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i])
            ++j;
        long long k = static_cast<long long>(j - i) * (w[i] > 0 ? 1 : -1);
        s += generators.at(static_cast<std::size_t>(std::abs(w[i]) - 1));
        if (k != 1)
            s += "^" + std::to_string(k);
        i = j;
    }
    return s;
}

std::string FpPresentation::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < generators.size(); ++i)
        s += (i ? "," : "") + generators[i];
    s += " |";
    for (std::size_t i = 0; i < relators.size(); ++i)
        s += (i ? ", " : " ") + word_to_string(relators[i]);
    return s;
}

// ---- parser ------------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(const FpPresentation &p, std::string_view text, std::size_t offset)
        : p_(p), text_(text), offset_(offset)
    {
    }

    Word relator()
    {
        Word w = product();
        skip();
        if (peek() == '=') {
            ++pos_;
            w = concat(w, inverse(product()));
        }
        return w;
    }

    bool at_end()
    {
        skip();
        return pos_ >= text_.size();
    }
    char peek()
    {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    void expect(char c)
    {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string &what) { throw ParseError(what, offset_ + pos_); }

private:
    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool starts_factor()
    {
        char c = peek();
        return c == '(' || c == '[' || c == '1' || std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    Word product()
    {
        Word w;
        if (!starts_factor())
            fail("expected a word");
        while (starts_factor())
            w = concat(w, factor());
        return w;
    }

    Word generator()
    {
        std::size_t best = 0, which = 0;
        for (std::size_t i = 0; i < p_.generators.size(); ++i) {
            const auto &g = p_.generators[i];
            if (g.size() > best && text_.substr(pos_, g.size()) == g) {
                best = g.size();
                which = i;
            }
        }
        if (best == 0) {
            std::size_t end = pos_;
            while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            fail("undeclared generator '" + std::string(text_.substr(pos_, std::max<std::size_t>(end - pos_, 1))) + "'");
        }
        pos_ += best;
        return Word{static_cast<Letter>(which + 1)};
    }

    Word atom()
    {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Word w = product();
            expect(')');
            return w;
        }
        if (c == '[') {
            ++pos_;
            Word u = product();
            expect(',');
            Word v = product();
            expect(']');
            return commutator(u, v);
        }
        if (c == '1') {
            ++pos_;
            return {};
        }
        return generator();
    }

    Word factor()
    {
        Word w = atom();
        while (peek() == '^') {
            ++pos_;
            char c = peek();
            if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
                bool neg = c == '-';
                if (neg)
                    ++pos_;
                skip();
                std::size_t start = pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
                if (start == pos_)
                    fail("expected an exponent");
                long long k = std::stoll(std::string(text_.substr(start, pos_ - start)));
                w = power(w, neg ? -k : k);
            } else if (c == '(') {
                ++pos_;
                Word by = product();
                expect(')');
                w = conjugate(w, by);
            } else {
                w = conjugate(w, generator());
            }
        }
        return w;
    }

    const FpPresentation &p_;
    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

} // namespace

FpPresentation parse_presentation(std::string_view text)
{
    std::size_t bar = text.find('|');
    if (bar == std::string_view::npos)
        throw ParseError("missing '|' between generators and relators", text.size());
    FpPresentation p;
    std::size_t start = 0;
    std::string_view gens = text.substr(0, bar);
    while (start <= gens.size()) {
        std::size_t comma = gens.find(',', start);
        std::size_t end = comma == std::string_view::npos ? gens.size() : comma;
        std::string name = trim(gens.substr(start, end - start));
        if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
            throw ParseError("bad generator name '" + name + "'", start);
        for (char c : name)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                throw ParseError("bad generator name '" + name + "'", start);
        if (std::find(p.generators.begin(), p.generators.end(), name) != p.generators.end())
            throw ParseError("duplicate generator '" + name + "'", start);
        p.generators.push_back(name);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    Parser parser(p, text.substr(bar + 1), bar + 1);
    std::set<Word> seen;
    if (!parser.at_end()) {
        while (true) {
            Word r = parser.relator();
            if (!r.empty() && seen.insert(r).second)
                p.relators.push_back(std::move(r));
            if (parser.at_end())
                break;
            parser.expect(',');
        }
    }
    return p;
}

Word parse_word(const FpPresentation &p, std::string_view text)
{
    Parser parser(p, text, 0);
    Word w = parser.relator();
    if (!parser.at_end())
        parser.fail("trailing input");
    return w;
}

Permutation evaluate(const Word &w, const std::vector<Permutation> &images)
{
    if (images.empty())
        throw std::invalid_argument("no generator images");
    Permutation r(images[0].degree());
    for (Letter x : w) {
        const Permutation &g = images.at(static_cast<std::size_t>(std::abs(x) - 1));
        r = r * (x > 0 ? g : g.inverse());
    }
    return r;
}

// ---- universal groups --------------------------------------------------------

namespace {

std::size_t ceil_two_thirds(std::size_t s) { return (2 * s + 2) / 3; }

std::size_t row_length(std::size_t s, std::size_t alpha, std::size_t j) { return 2 * alpha + j + 1 - 2 * s; }

} // namespace

void validate_type(const UniversalType &t)
{
    if (t.s < 1)
        throw std::invalid_argument("universal type needs s >= 1");
    if (t.alpha < ceil_two_thirds(t.s) || t.alpha > t.s)
        throw std::invalid_argument("universal type needs ceil(2s/3) <= alpha <= s (s=" + std::to_string(t.s) +
                                    ", alpha=" + std::to_string(t.alpha) + ")");
    if (t.c.size() != t.s - t.alpha)
        throw std::invalid_argument("universal type has the wrong number of c rows");
    for (std::size_t j = t.alpha; j < t.s; ++j) {
        const auto &row = t.c[j - t.alpha];
        if (row.size() != row_length(t.s, t.alpha, j))
            throw std::invalid_argument("c row for j=" + std::to_string(j) + " has the wrong length");
        for (auto bit : row)
            if (bit > 1)
                throw std::invalid_argument("c entries must be 0 or 1");
    }
}

FpPresentation universal_group(const UniversalType &t)
{
    validate_type(t);
    FpPresentation p;
    static const char *letters[] = {"a", "b", "c", "d", "e"};
    for (std::size_t i = 0; i < t.s; ++i)
        p.generators.push_back(t.s <= 5 ? letters[i] : "x" + std::to_string(i));
    p.generators.push_back("g");
    auto x = [](std::size_t i) { return Word{static_cast<Letter>(i + 1)}; };
    const Word g{static_cast<Letter>(t.s + 1)};

    for (std::size_t i = 0; i < t.s; ++i)
        p.relators.push_back(power(x(i), 2));
    // x_i^g = x_{i+1}, written x_i^g x_{i+1} as the generators are involutions
    for (std::size_t i = 0; i + 1 < t.s; ++i)
        p.relators.push_back(concat(conjugate(x(i), g), x(i + 1)));
    for (std::size_t j = 1; j < t.s; ++j) {
        Word r = commutator(x(0), x(j));
        if (j >= t.alpha) {
            const auto &row = t.c[j - t.alpha];
            for (std::size_t i = 0; i < row.size(); ++i)
                if (row[i])
                    r = concat(r, x(t.s - t.alpha + i));
        }
        p.relators.push_back(r);
    }
    return p;
}

UniversalType reverse_type(const UniversalType &t)
{
    validate_type(t);
    UniversalType r = t;
    for (auto &row : r.c)
        std::reverse(row.begin(), row.end());
    return r;
}

std::vector<UniversalEntry> universal_catalogue(std::size_t s_max)
{
    if (s_max < 1 || s_max > 5)
        throw std::invalid_argument("universal catalogue covers 1 <= s <= 5");
    std::vector<UniversalEntry> out;
    for (std::size_t s = 1; s <= s_max; ++s) {
        std::vector<UniversalType> types;
        for (std::size_t alpha = s; alpha >= ceil_two_thirds(s) && alpha >= 1; --alpha) {
            std::size_t rows = s - alpha;
            std::vector<std::size_t> lengths;
            std::size_t bits = 0;
            for (std::size_t j = alpha; j < s; ++j) {
                lengths.push_back(row_length(s, alpha, j));
                bits += lengths.back();
            }
            std::vector<UniversalType> level;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
                UniversalType t{s, alpha, {}, ""};
                std::size_t k = bits;
                for (std::size_t r = 0; r < rows; ++r) {
                    std::vector<std::uint8_t> row;
                    for (std::size_t i = 0; i < lengths[r]; ++i)
                        row.push_back(static_cast<std::uint8_t>((mask >> --k) & 1));
                    t.c.push_back(std::move(row));
                }
                // the last row all zero gives [x_0, x_{s-1}] = 1, already covered by larger alpha
                if (rows > 0 && std::all_of(t.c.back().begin(), t.c.back().end(), [](auto b) { return b == 0; }))
                    continue;
                // keep the lexicographically larger member of each {c, c'} pair
                UniversalType rev = reverse_type(t);
                if (rev.c > t.c)
                    continue;
                level.push_back(std::move(t));
            }
            std::sort(level.begin(), level.end(), [](const UniversalType &a, const UniversalType &b) {
                auto weight = [](const UniversalType &t) {
                    std::size_t w = 0;
                    for (const auto &row : t.c)
                        w += static_cast<std::size_t>(std::count(row.begin(), row.end(), 1));
                    return w;
                };
                if (weight(a) != weight(b))
                    return weight(a) < weight(b);
                return a.c > b.c;
            });
            types.insert(types.end(), level.begin(), level.end());
            if (alpha == 1)
                break;
        }
        for (std::size_t i = 0; i < types.size(); ++i) {
            types[i].name = "A_" + std::to_string(s) + "^" + std::to_string(i + 1);
            out.push_back({types[i], universal_group(types[i])});
        }
    }
    return out;
}

} // namespace atd
