#include "tscmon/trace_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string_view>

#include "tscmon/util.hpp"

namespace tscmon {
namespace {

// Minimal JSON scanner for the flat trace schema. Strict about structure,
// tolerant about key order; unknown keys are handled by the caller.
class Scanner {
  public:
    Scanner(std::string_view text, std::size_t line_no) : p_(text.data()), end_(text.data() + text.size()), line_(line_no) {}

    [[noreturn]] void fail(const std::string& msg) const { throw IngestError(line_, msg); }

    void skip_ws() {
        while (p_ < end_ && (*p_ == ' ' || *p_ == '\t' || *p_ == '\r')) ++p_;
    }

    bool at_end() {
        skip_ws();
        return p_ >= end_;
    }

    char peek() {
        skip_ws();
        if (p_ >= end_) fail("unexpected end of record");
        return *p_;
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++p_;
    }

    bool eat(char c) {
        skip_ws();
        if (p_ < end_ && *p_ == c) {
            ++p_;
            return true;
        }
        return false;
    }

    std::string parse_string() {
        expect('"');
        std::string out;
        while (p_ < end_ && *p_ != '"') {
            char c = *p_++;
            if (c != '\\') {
                out.push_back(c);
                continue;
            }
            if (p_ >= end_) fail("unterminated string escape");
            char esc = *p_++;
            switch (esc) {
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            case '/': out.push_back('/'); break;
            case 'b': out.push_back('\b'); break;
            case 'f': out.push_back('\f'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            case 't': out.push_back('\t'); break;
            case 'u': append_unicode(out); break;
            default: fail("invalid string escape");
            }
        }
        if (p_ >= end_) fail("unterminated string");
        ++p_; // closing quote
        return out;
    }

    double parse_number(const std::string& field) {
        skip_ws();
        double value = 0.0;
        auto res = std::from_chars(p_, end_, value);
        if (res.ec != std::errc() || res.ptr == p_) fail("malformed number in field '" + field + "'");
        p_ = res.ptr;
        if (!std::isfinite(value)) fail("non-finite value in field '" + field + "'");
        return value;
    }

    void skip_value() {
        char c = peek();
        if (c == '"') {
            parse_string();
        } else if (c == '{') {
            ++p_;
            if (!eat('}')) {
                do {
                    parse_string();
                    expect(':');
                    skip_value();
                } while (eat(','));
                expect('}');
            }
        } else if (c == '[') {
            ++p_;
            if (!eat(']')) {
                do {
                    skip_value();
                } while (eat(','));
                expect(']');
            }
        } else if (match_literal("true") || match_literal("false") || match_literal("null")) {
            // consumed
        } else {
            double ignored = 0.0;
            auto res = std::from_chars(p_, end_, ignored);
            if (res.ec != std::errc() || res.ptr == p_) fail("malformed value");
            p_ = res.ptr;
        }
    }

    void expect_end() {
        skip_ws();
        if (p_ < end_) fail("trailing characters after record");
    }

  private:
    const char* p_;
    const char* end_;
    std::size_t line_;

    bool match_literal(std::string_view lit) {
        skip_ws();
        if (static_cast<std::size_t>(end_ - p_) < lit.size()) return false;
        if (std::string_view(p_, lit.size()) != lit) return false;
        p_ += lit.size();
        return true;
    }

    unsigned parse_hex4() {
        if (end_ - p_ < 4) fail("truncated \\u escape");
        unsigned value = 0;
        for (int i = 0; i < 4; ++i) {
            char c = *p_++;
            value <<= 4;
            if (c >= '0' && c <= '9') value |= static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f') value |= static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') value |= static_cast<unsigned>(c - 'A' + 10);
            else fail("invalid \\u escape");
        }
        return value;
    }

    void append_unicode(std::string& out) {
        std::uint32_t cp = parse_hex4();
        if (cp >= 0xD800 && cp <= 0xDBFF) {
            if (end_ - p_ < 2 || p_[0] != '\\' || p_[1] != 'u') fail("unpaired surrogate");
            p_ += 2;
            std::uint32_t low = parse_hex4();
            if (low < 0xDC00 || low > 0xDFFF) fail("invalid surrogate pair");
            cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
        } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
            fail("unpaired surrogate");
        }
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
};

bool blank(const std::string& line) {
    for (char c : line)
        if (c != ' ' && c != '\t' && c != '\r') return false;
    return true;
}

RoadGeometry parse_road(Scanner& sc, bool strict) {
    RoadGeometry road;
    bool have_lanes = false, have_width = false, have_length = false;
    sc.expect('{');
    do {
        std::string key = sc.parse_string();
        sc.expect(':');
        if (key == "lanes") {
            if (have_lanes) sc.fail("duplicate field 'lanes'");
            double lanes = sc.parse_number(key);
            if (lanes < 1.0 || lanes != std::floor(lanes)) sc.fail("'lanes' must be a positive integer");
            road.lane_count = static_cast<int>(lanes);
            have_lanes = true;
        } else if (key == "lane_width") {
            if (have_width) sc.fail("duplicate field 'lane_width'");
            road.lane_width = sc.parse_number(key);
            if (!(road.lane_width > 0.0)) sc.fail("'lane_width' must be positive");
            have_width = true;
        } else if (key == "length") {
            if (have_length) sc.fail("duplicate field 'length'");
            road.length = sc.parse_number(key);
            if (!(road.length > 0.0)) sc.fail("'length' must be positive");
            have_length = true;
        } else if (strict) {
            sc.fail("unknown field '" + key + "' in road header");
        } else {
            sc.skip_value();
        }
    } while (sc.eat(','));
    sc.expect('}');
    if (!have_lanes || !have_width || !have_length) sc.fail("incomplete road header");
    return road;
}

ObjectState parse_object(Scanner& sc, bool strict) {
    ObjectState obj;
    bool have[7] = {}; // role, x, y, yaw, v, length, width
    sc.expect('{');
    do {
        std::string key = sc.parse_string();
        sc.expect(':');
        int slot = -1;
        if (key == "role") slot = 0;
        else if (key == "x") slot = 1;
        else if (key == "y") slot = 2;
        else if (key == "yaw") slot = 3;
        else if (key == "v") slot = 4;
        else if (key == "length") slot = 5;
        else if (key == "width") slot = 6;
        if (slot < 0) {
            if (strict) sc.fail("unknown field '" + key + "' in object record");
            sc.skip_value();
            continue;
        }
        if (have[slot]) sc.fail("duplicate field '" + key + "'");
        have[slot] = true;
        if (slot == 0) {
            obj.role = sc.parse_string();
            if (obj.role.empty()) sc.fail("empty role name");
        } else {
            double value = sc.parse_number(key);
            switch (slot) {
            case 1: obj.x = value; break;
            case 2: obj.y = value; break;
            case 3: obj.yaw = value; break;
            case 4:
                if (value < 0.0) sc.fail("negative speed");
                obj.v = value;
                break;
            case 5:
                if (!(value > 0.0)) sc.fail("'length' must be positive");
                obj.length = value;
                break;
            case 6:
                if (!(value > 0.0)) sc.fail("'width' must be positive");
                obj.width = value;
                break;
            }
        }
    } while (sc.eat(','));
    sc.expect('}');
    for (bool h : have)
        if (!h) sc.fail("incomplete object record");
    return obj;
}

} // namespace

TraceReader::TraceReader(std::istream& in, bool strict) : in_(in), strict_(strict) {
    if (!read_line()) throw IngestError(line_no_ ? line_no_ : 1, "missing road header");
    Scanner sc(line_, line_no_);
    sc.expect('{');
    std::string key = sc.parse_string();
    if (key != "road") sc.fail("missing road header");
    sc.expect(':');
    road_ = parse_road(sc, strict_);
    while (sc.eat(',')) {
        std::string extra = sc.parse_string();
        sc.expect(':');
        if (strict_) sc.fail("unknown field '" + extra + "' in header record");
        sc.skip_value();
    }
    sc.expect('}');
    sc.expect_end();
}

bool TraceReader::read_line() {
    while (std::getline(in_, line_)) {
        ++line_no_;
        if (!blank(line_)) return true;
    }
    return false;
}

std::optional<WorldSample> TraceReader::next() {
    if (!read_line()) return std::nullopt;
    Scanner sc(line_, line_no_);
    WorldSample sample;
    bool have_t = false, have_objects = false;
    sc.expect('{');
    do {
        std::string key = sc.parse_string();
        sc.expect(':');
        if (key == "t") {
            if (have_t) sc.fail("duplicate field 't'");
            sample.t = sc.parse_number(key);
            have_t = true;
        } else if (key == "objects") {
            if (have_objects) sc.fail("duplicate field 'objects'");
            have_objects = true;
            sc.expect('[');
            if (!sc.eat(']')) {
                do {
                    sample.objects.push_back(parse_object(sc, strict_));
                } while (sc.eat(','));
                sc.expect(']');
            }
        } else if (strict_) {
            sc.fail("unknown field '" + key + "' in sample record");
        } else {
            sc.skip_value();
        }
    } while (sc.eat(','));
    sc.expect('}');
    sc.expect_end();
    if (!have_t || !have_objects) sc.fail("incomplete sample record");

    for (std::size_t i = 0; i < sample.objects.size(); ++i)
        for (std::size_t j = i + 1; j < sample.objects.size(); ++j)
            if (sample.objects[i].role == sample.objects[j].role)
                sc.fail("duplicate role '" + sample.objects[i].role + "' in sample");

    if (have_last_ && !(sample.t > last_t_)) sc.fail("non-increasing timestamp");
    last_t_ = sample.t;
    have_last_ = true;
    return sample;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default: out.push_back(c); break;
        }
    }
    out.push_back('"');
}

} // namespace

void write_trace_header(std::ostream& out, const RoadGeometry& road) {
    std::string line = "{\"road\": {\"lanes\": " + std::to_string(road.lane_count) +
                       ", \"lane_width\": " + format_double(road.lane_width) +
                       ", \"length\": " + format_double(road.length) + "}}\n";
    out << line;
}

void write_trace_sample(std::ostream& out, const WorldSample& sample) {
    std::string line = "{\"t\": " + format_double(sample.t) + ", \"objects\": [";
    for (std::size_t i = 0; i < sample.objects.size(); ++i) {
        const ObjectState& o = sample.objects[i];
        if (i > 0) line += ", ";
        line += "{\"role\": ";
        append_escaped(line, o.role);
        line += ", \"x\": " + format_double(o.x);
        line += ", \"y\": " + format_double(o.y);
        line += ", \"yaw\": " + format_double(o.yaw);
        line += ", \"v\": " + format_double(o.v);
        line += ", \"length\": " + format_double(o.length);
        line += ", \"width\": " + format_double(o.width);
        line += "}";
    }
    line += "]}\n";
    out << line;
}

void write_trace(std::ostream& out, const RoadGeometry& road, std::span<const WorldSample> samples) {
    write_trace_header(out, road);
    for (const auto& s : samples) write_trace_sample(out, s);
}

} // namespace tscmon
