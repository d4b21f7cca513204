#include "bbcodes/specfile.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace bbcodes {

SpecFileError::SpecFileError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(line == 0 ? source + ": " + what
                                  : source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Value {
    std::string text;
    bool quoted = false;
    std::size_t line = 0;
    std::size_t column = 0;  // of the first character of text
};

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; }

}  // namespace

BBCodeSpec parse_spec_text(const std::string& text, const std::string& source) {
    std::map<std::string, Value> values;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::size_t pos = 0;
        auto skip = [&] {
            while (pos < raw.size() && is_space(raw[pos])) {
                ++pos;
            }
        };
        auto fail = [&](const std::string& what) -> SpecFileError {
            return SpecFileError(source, line_no, pos + 1, what);
        };
        skip();
        if (pos == raw.size() || raw[pos] == '#') {
            continue;
        }
        const std::size_t key_start = pos;
        while (pos < raw.size() && (std::isalnum(static_cast<unsigned char>(raw[pos])) || raw[pos] == '_')) {
            ++pos;
        }
        std::string key = raw.substr(key_start, pos - key_start);
        if (key.empty()) {
            throw fail("expected a key");
        }
        if (key != "l" && key != "m" && key != "c" && key != "d") {
            pos = key_start;
            throw fail("unknown key '" + key + "' (expected l, m, c or d)");
        }
        if (values.contains(key)) {
            pos = key_start;
            throw fail("duplicate key '" + key + "'");
        }
        skip();
        if (pos == raw.size() || raw[pos] != '=') {
            throw fail("expected '=' after '" + key + "'");
        }
        ++pos;
        skip();
        Value v;
        v.line = line_no;
        if (pos < raw.size() && raw[pos] == '"') {
            const std::size_t close = raw.find('"', pos + 1);
            if (close == std::string::npos) {
                throw fail("unterminated string");
            }
            v.quoted = true;
            v.column = pos + 2;
            v.text = raw.substr(pos + 1, close - pos - 1);
            pos = close + 1;
        } else {
            const std::size_t start = pos;
            while (pos < raw.size() && !is_space(raw[pos]) && raw[pos] != '#') {
                ++pos;
            }
            v.column = start + 1;
            v.text = raw.substr(start, pos - start);
            if (v.text.empty()) {
                throw fail("missing value for '" + key + "'");
            }
        }
        skip();
        if (pos < raw.size() && raw[pos] != '#') {
            throw fail("unexpected text after value");
        }
        values.emplace(key, v);
    }

    auto need = [&](const std::string& key) -> const Value& {
        auto it = values.find(key);
        if (it == values.end()) {
            throw SpecFileError(source, line_no + 1, 1, "missing key '" + key + "'");
        }
        return it->second;
    };
    auto integer = [&](const std::string& key) {
        const Value& v = need(key);
        int out = 0;
        auto [end, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
        if (v.quoted || ec != std::errc() || end != v.text.data() + v.text.size() || out < 1) {
            throw SpecFileError(source, v.line, v.column, "'" + key + "' must be a positive integer, got '" + v.text + "'");
        }
        return out;
    };
    RingParams p(integer("l"), integer("m"));
    auto poly = [&](const std::string& key) {
        const Value& v = need(key);
        if (!v.quoted) {
            throw SpecFileError(source, v.line, v.column, "'" + key + "' must be a quoted polynomial");
        }
        try {
            return parse_ring_elem(p, v.text);
        } catch (const PolyParseError& err) {
            throw SpecFileError(source, v.line, v.column + err.column() - 1,
                                "bad polynomial for '" + key + "': " + err.what());
        }
    };
    RingElem c = poly("c");
    RingElem d = poly("d");
    return BBCodeSpec(c, d);
}

BBCodeSpec read_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecFileError(path, 0, 0, "cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str(), path);
}

std::string format_spec(const BBCodeSpec& spec) {
    return "l = " + std::to_string(spec.params.ell) + "\nm = " + std::to_string(spec.params.m) + "\nc = \"" +
           spec.c.to_string() + "\"\nd = \"" + spec.d.to_string() + "\"\n";
}

}  // namespace bbcodes
