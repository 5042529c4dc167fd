#include "skewspec/toml_lite.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "skewspec/types.hpp"

namespace skewspec {

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;
    int line = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("config parse error on line " + std::to_string(line) + ": " + msg);
    }

    bool done() const { return i >= s.size(); }
    char peek() const { return s[i]; }

    char advance() {
        char c = s[i++];
        if (c == '\n') ++line;
        return c;
    }

    // Skips spaces, tabs and comments; newlines too when `newlines` is set.
    void skip_ws(bool newlines) {
        while (!done()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (!done() && peek() != '\n') advance();
            } else if (c == '\n' && newlines) {
                advance();
            } else {
                break;
            }
        }
    }

    // A key-value pair or table header must be followed by a comment,
    // newline or end of input on the same line.
    void expect_line_end() {
        skip_ws(false);
        if (done()) return;
        if (peek() != '\n') fail("unexpected trailing characters");
    }

    static bool is_bare_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    std::string bare_key() {
        std::string k;
        while (!done() && is_bare_char(peek())) k.push_back(advance());
        if (k.empty()) fail("expected a key");
        return k;
    }

    std::string quoted_string() {
        advance();  // opening quote
        std::string out;
        while (true) {
            if (done() || peek() == '\n') fail("unterminated string");
            char c = advance();
            if (c == '"') return out;
            if (c == '\\') {
                if (done()) fail("unterminated escape");
                char e = advance();
                if (e == '"' || e == '\\') {
                    out.push_back(e);
                } else {
                    fail("unsupported escape sequence");
                }
            } else {
                out.push_back(c);
            }
        }
    }

    nlohmann::json number() {
        std::size_t start = i;
        bool is_float = false;
        while (!done()) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-') {
                advance();
            } else if (c == '.' || c == 'e' || c == 'E') {
                is_float = true;
                advance();
            } else if (c == 'n' || c == 'a' || c == 'i' || c == 'f') {
                // inf / nan spellings, possibly signed
                is_float = true;
                advance();
            } else {
                break;
            }
        }
        std::string tok = s.substr(start, i - start);
        if (tok.empty()) fail("expected a value");
        try {
            if (is_float) return std::stod(tok);
            return static_cast<std::int64_t>(std::stoll(tok));
        } catch (const std::exception&) {
            fail("malformed number '" + tok + "'");
        }
    }

    nlohmann::json value() {
        skip_ws(false);
        if (done()) fail("expected a value");
        char c = peek();
        if (c == '"') return quoted_string();
        if (c == '[') return array();
        if (std::isalpha(static_cast<unsigned char>(c)) && c != 'i' && c != 'n') {
            std::string word = bare_key();
            if (word == "true") return true;
            if (word == "false") return false;
            fail("unexpected token '" + word + "'");
        }
        return number();
    }

    nlohmann::json array() {
        advance();  // '['
        nlohmann::json arr = nlohmann::json::array();
        skip_ws(true);
        while (true) {
            if (done()) fail("unterminated array");
            if (peek() == ']') {
                advance();
                return arr;
            }
            arr.push_back(value());
            skip_ws(true);
            if (done()) fail("unterminated array");
            if (peek() == ',') {
                advance();
                skip_ws(true);
            } else if (peek() != ']') {
                fail("expected ',' or ']' in array");
            }
        }
    }
};

}  // namespace

nlohmann::json parse_toml_lite(const std::string& text) {
    Parser p{text};
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* table = &root;

    while (true) {
        p.skip_ws(true);
        if (p.done()) break;

        if (p.peek() == '[') {
            p.advance();
            // Dotted headers open nested tables; each segment is a bare key.
            table = &root;
            while (true) {
                p.skip_ws(false);
                std::string seg = p.bare_key();
                nlohmann::json& slot = (*table)[seg];
                if (slot.is_null()) slot = nlohmann::json::object();
                if (!slot.is_object()) p.fail("table '" + seg + "' conflicts with an existing key");
                table = &slot;
                p.skip_ws(false);
                if (p.done()) p.fail("unterminated table header");
                if (p.peek() == '.') {
                    p.advance();
                    continue;
                }
                if (p.peek() == ']') {
                    p.advance();
                    break;
                }
                p.fail("expected '.' or ']' in table header");
            }
            p.expect_line_end();
            continue;
        }

        std::string key = p.bare_key();
        p.skip_ws(false);
        if (p.done() || p.peek() != '=') p.fail("expected '=' after key '" + key + "'");
        p.advance();
        if (table->contains(key)) p.fail("duplicate key '" + key + "'");
        (*table)[key] = p.value();
        p.expect_line_end();
    }
    return root;
}

nlohmann::json load_config_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    auto ends_with = [&](const char* suffix) {
        std::string suf(suffix);
        return path.size() >= suf.size() && path.compare(path.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (ends_with(".json")) {
        try {
            return nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
    }
    if (ends_with(".toml")) return parse_toml_lite(text);
    throw ConfigError("config file must end in .toml or .json: " + path);
}

}  // namespace skewspec
