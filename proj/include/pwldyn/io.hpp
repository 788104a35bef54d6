#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "pwldyn/pwl.hpp"
#include "pwldyn/relu.hpp"

namespace pwldyn {
namespace detail {

// Minimal value tree for the text formats: lists, objects with bare keys,
// and double-quoted strings.
struct Value {
    enum class Kind { String, List, Object } kind;
    std::string str;
    std::vector<Value> list;
    std::vector<std::pair<std::string, Value>> fields;

    const Value& field(const std::string& key) const {
        for (const auto& [k, v] : fields)
            if (k == key) return v;
        throw ParseError("missing field: " + key);
    }
    bool has_field(const std::string& key) const {
        for (const auto& [k, v] : fields)
            if (k == key) return true;
        return false;
    }
};

class ValueParser {
public:
    explicit ValueParser(const std::string& text) : s_(text) {}

    Value parse() {
        Value v = parse_value();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing characters in value");
        return v;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input");
        return s_[pos_];
    }
    void expect(char c) {
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool consume(char c) {
        if (pos_ < s_.size() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Value parse_value() {
        char c = peek();
        if (c == '[') return parse_list();
        if (c == '{') return parse_object();
        if (c == '"') return parse_string();
        throw ParseError(std::string("unexpected character: ") + c);
    }

    Value parse_string() {
        expect('"');
        Value v;
        v.kind = Value::Kind::String;
        while (pos_ < s_.size() && s_[pos_] != '"') v.str += s_[pos_++];
        if (pos_ >= s_.size()) throw ParseError("unterminated string");
        ++pos_;
        return v;
    }

    Value parse_list() {
        expect('[');
        Value v;
        v.kind = Value::Kind::List;
        if (consume(']')) return v;
        while (true) {
            v.list.push_back(parse_value());
            if (consume(']')) return v;
            expect(',');
        }
    }

    std::string parse_key() {
        skip_ws();
        std::string key;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            key += s_[pos_++];
        if (key.empty()) throw ParseError("expected object key");
        return key;
    }

    Value parse_object() {
        expect('{');
        Value v;
        v.kind = Value::Kind::Object;
        if (consume('}')) return v;
        while (true) {
            std::string key = parse_key();
            expect(':');
            v.fields.emplace_back(key, parse_value());
            if (consume('}')) return v;
            expect(',');
        }
    }
};

inline Rational as_rational(const Value& v) {
    if (v.kind != Value::Kind::String) throw ParseError("expected a rational string");
    return parse_rational(v.str);
}

inline std::string quote(const Rational& q) { return "\"" + to_string(q) + "\""; }

}  // namespace detail

/// PWL spec text format; parse(print(f)) == f bit-exactly.
///
///   domain: ["a", "b"]
///   breakpoints: [["x1", "y1"], ...]
inline std::string print_pwl(const PwlFunction& f) {
    std::ostringstream out;
    Interval dom = f.domain();
    out << "domain: [" << detail::quote(dom.lo) << ", " << detail::quote(dom.hi) << "]\n";
    out << "breakpoints: [";
    bool first = true;
    for (const auto& p : f.breakpoints()) {
        if (!first) out << ", ";
        first = false;
        out << "[" << detail::quote(p.x) << ", " << detail::quote(p.y) << "]";
    }
    out << "]\n";
    return out.str();
}

inline PwlFunction parse_pwl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string domain_src, breakpoints_src;
    while (std::getline(in, line)) {
        auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = line.substr(0, colon);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        std::string rest = line.substr(colon + 1);
        if (key == "domain")
            domain_src = rest;
        else if (key == "breakpoints")
            breakpoints_src = rest;
    }
    if (domain_src.empty() || breakpoints_src.empty())
        throw ParseError("pwl document needs 'domain' and 'breakpoints' fields");
    detail::Value dom = detail::ValueParser(domain_src).parse();
    detail::Value bps = detail::ValueParser(breakpoints_src).parse();
    if (dom.kind != detail::Value::Kind::List || dom.list.size() != 2)
        throw ParseError("domain must be a two-element list");
    std::vector<PwlFunction::Point> pts;
    for (const auto& pair : bps.list) {
        if (pair.kind != detail::Value::Kind::List || pair.list.size() != 2)
            throw ParseError("each breakpoint must be a two-element list");
        pts.push_back({detail::as_rational(pair.list[0]), detail::as_rational(pair.list[1])});
    }
    PwlFunction f(std::move(pts));
    Interval declared{detail::as_rational(dom.list[0]), detail::as_rational(dom.list[1])};
    if (!(f.domain() == declared))
        throw ParseError("declared domain does not match breakpoints");
    return f;
}

/// Network spec text format; round-trips bit-exactly.
///
///   layers: [{weights: [["w", ...], ...], biases: ["b", ...],
///             activation: "relu"|"identity", offset: "e"}, ...]
///
/// offset is emitted only when nonzero.
inline std::string print_network(const ReluNetwork& net) {
    std::ostringstream out;
    out << "layers: [";
    bool first_layer = true;
    for (const auto& l : net.layers()) {
        if (!first_layer) out << ", ";
        first_layer = false;
        out << "{weights: [";
        for (std::size_t j = 0; j < l.weights.size(); ++j) {
            if (j) out << ", ";
            out << "[";
            for (std::size_t m = 0; m < l.weights[j].size(); ++m) {
                if (m) out << ", ";
                out << detail::quote(l.weights[j][m]);
            }
            out << "]";
        }
        out << "], biases: [";
        for (std::size_t j = 0; j < l.biases.size(); ++j) {
            if (j) out << ", ";
            out << detail::quote(l.biases[j]);
        }
        out << "], activation: \""
            << (l.activation == Activation::Relu ? "relu" : "identity") << "\"";
        if (l.offset != 0) out << ", offset: " << detail::quote(l.offset);
        out << "}";
    }
    out << "]\n";
    return out.str();
}

inline ReluNetwork parse_network(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos || text.substr(0, colon).find("layers") == std::string::npos)
        throw ParseError("network document needs a 'layers' field");
    detail::Value layers = detail::ValueParser(text.substr(colon + 1)).parse();
    if (layers.kind != detail::Value::Kind::List) throw ParseError("layers must be a list");
    std::vector<ReluNetwork::Layer> out;
    for (const auto& lv : layers.list) {
        if (lv.kind != detail::Value::Kind::Object) throw ParseError("each layer must be an object");
        ReluNetwork::Layer layer;
        for (const auto& row : lv.field("weights").list) {
            std::vector<Rational> w;
            for (const auto& cell : row.list) w.push_back(detail::as_rational(cell));
            layer.weights.push_back(std::move(w));
        }
        for (const auto& b : lv.field("biases").list) layer.biases.push_back(detail::as_rational(b));
        const std::string& act = lv.field("activation").str;
        if (act == "relu")
            layer.activation = Activation::Relu;
        else if (act == "identity")
            layer.activation = Activation::Identity;
        else
            throw ParseError("unknown activation: " + act);
        if (lv.has_field("offset")) layer.offset = detail::as_rational(lv.field("offset"));
        out.push_back(std::move(layer));
    }
    return ReluNetwork(std::move(out));
}

}  // namespace pwldyn
