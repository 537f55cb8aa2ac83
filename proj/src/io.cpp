#include "freearr/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "freearr/errors.hpp"

namespace freearr {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

struct SourceLine {
    std::size_t number;
    std::vector<Token> tokens;
};

std::vector<SourceLine> tokenize(std::string_view text) {
    std::vector<SourceLine> out;
    std::size_t number = 0;
    while (!text.empty() || number == 0) {
        ++number;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        SourceLine sl{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            const std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) sl.tokens.push_back({line.substr(start, i - start), start + 1});
        }
        if (!sl.tokens.empty()) out.push_back(std::move(sl));
        if (text.empty()) break;
    }
    return out;
}

std::int64_t parse_int(const SourceLine& line, const Token& tok, const char* what) {
    std::int64_t v = 0;
    const auto* end = tok.text.data() + tok.text.size();
    const auto [ptr, ec] = std::from_chars(tok.text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ParseError(line.number, tok.column, std::string("expected ") + what + ", got '" + std::string(tok.text) + "'");
    return v;
}

Field parse_header(const SourceLine& line) {
    const auto& t = line.tokens;
    if (t[0].text != "field") throw ParseError(line.number, t[0].column, "expected 'field' header");
    if (t.size() < 2) throw ParseError(line.number, t[0].column + 5, "missing field name");
    try {
        if (t[1].text == "Q" && t.size() == 2) return Field::rationals();
        if (t[1].text == "Q" && t.size() == 4 && t[2].text == "sqrt") return Field::quadratic(parse_int(line, t[3], "radicand"));
        if (t[1].text == "Q" && t.size() >= 3) throw ParseError(line.number, t[2].column, "expected 'sqrt <d>'");
        if (t[1].text == "F" && t.size() == 3) return Field::prime(parse_int(line, t[2], "prime"));
        if (t[1].text == "F") throw ParseError(line.number, t[1].column, "expected 'F <p>'");
    } catch (const FieldError& e) {
        throw ParseError(line.number, t.back().column, e.what());
    }
    throw ParseError(line.number, t[1].column, "unknown field '" + std::string(t[1].text) + "'");
}

Scalar parse_scalar_at(const SourceLine& line, const Token& tok, const Field& field) {
    try {
        return parse_scalar(tok.text, field);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line.number, tok.column, e.what());
    }
}

template <class OnRecord>
Field parse_records(std::string_view text, std::string_view keyword, OnRecord&& on_record) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "empty input, expected 'field' header");
    const Field field = parse_header(lines[0]);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const SourceLine& sl = lines[i];
        if (sl.tokens[0].text != keyword)
            throw ParseError(sl.number, sl.tokens[0].column, "expected '" + std::string(keyword) + "', got '" + std::string(sl.tokens[0].text) + "'");
        if (sl.tokens.size() != 4) {
            const std::size_t col = sl.tokens.size() > 4 ? sl.tokens[4].column : sl.tokens.back().column + sl.tokens.back().text.size();
            throw ParseError(sl.number, col, "expected exactly three values after '" + std::string(keyword) + "'");
        }
        on_record(field, sl);
    }
    return field;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Arrangement parse_arrangement(std::string_view text) {
    std::vector<Line> lines;
    const Field field = parse_records(text, "line", [&](const Field& f, const SourceLine& sl) {
        const Scalar a = parse_scalar_at(sl, sl.tokens[1], f);
        const Scalar b = parse_scalar_at(sl, sl.tokens[2], f);
        const Scalar c = parse_scalar_at(sl, sl.tokens[3], f);
        if (a.is_zero() && b.is_zero()) throw ParseError(sl.number, sl.tokens[1].column, "not a line: a = b = 0");
        Line l = Line::normalize(a, b, c);
        for (const auto& prev : lines)
            if (prev == l) throw ParseError(sl.number, sl.tokens[0].column, "duplicate line " + l.to_string());
        lines.push_back(std::move(l));
    });
    return Arrangement(field, std::move(lines));
}

Multiarrangement parse_multiarrangement(std::string_view text) {
    std::vector<Central> centrals;
    const Field field = parse_records(text, "mline", [&](const Field& f, const SourceLine& sl) {
        Scalar a = parse_scalar_at(sl, sl.tokens[1], f);
        Scalar b = parse_scalar_at(sl, sl.tokens[2], f);
        if (a.is_zero() && b.is_zero()) throw ParseError(sl.number, sl.tokens[1].column, "not a central line: a = b = 0");
        const std::int64_t mult = parse_int(sl, sl.tokens[3], "multiplicity");
        if (mult < 1) throw ParseError(sl.number, sl.tokens[3].column, "multiplicity must be at least 1");
        const Scalar lead = a.is_zero() ? b : a;
        a /= lead;
        b /= lead;
        for (const auto& prev : centrals)
            if (prev.a == a && prev.b == b) throw ParseError(sl.number, sl.tokens[0].column, "duplicate central " + a.to_string() + " " + b.to_string());
        centrals.push_back({std::move(a), std::move(b), mult});
    });
    return Multiarrangement(field, std::move(centrals));
}

Arrangement load_arrangement(const std::filesystem::path& path) { return parse_arrangement(read_file(path)); }

Multiarrangement load_multiarrangement(const std::filesystem::path& path) { return parse_multiarrangement(read_file(path)); }

std::string serialize(const Arrangement& a) {
    std::string out = "field " + a.field().to_string() + "\n";
    for (const auto& l : a.lines()) out += "line " + l.to_string() + "\n";
    return out;
}

std::string serialize(const Multiarrangement& m) {
    std::string out = "field " + m.field().to_string() + "\n";
    for (const auto& c : m.centrals()) out += "mline " + c.a.to_string() + " " + c.b.to_string() + " " + std::to_string(c.multiplicity) + "\n";
    return out;
}

}  // namespace freearr
