#include "cdcpath/lp_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "cdcpath/common.hpp"

namespace cdcpath {

namespace {

std::string num(double v) {
    if (v == std::numeric_limits<double>::infinity()) return "+inf";
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Append "+ c name" style terms, folding long expressions onto fresh lines.
class ExprWriter {
 public:
    explicit ExprWriter(std::string& out) : out_(out) {}

    void term(double coef, const std::string& body) {
        if (count_ > 0 && count_ % 8 == 0) out_ += "\n     ";
        if (count_ == 0) {
            if (coef < 0) out_ += "- ";
        } else {
            out_ += coef < 0 ? " - " : " + ";
        }
        out_ += num(std::abs(coef));
        if (!body.empty()) {
            out_ += ' ';
            out_ += body;
        }
        ++count_;
    }

    bool empty() const { return count_ == 0; }

 private:
    std::string& out_;
    int count_ = 0;
};

}  // namespace

std::string write_lp(const MipModel& m) {
    std::string out = m.sense == Sense::Maximize ? "Maximize\n" : "Minimize\n";
    out += " obj: ";
    {
        ExprWriter ew(out);
        for (const LinearTerm& t : m.objective) ew.term(t.coef, m.vars[t.var].name);
        if (m.objective_constant != 0.0) ew.term(m.objective_constant, "");
        if (!m.quadratic.empty()) {
            out += ew.empty() ? "[ " : " + [ ";
            ExprWriter qw(out);
            for (const QuadTerm& q : m.quadratic)
                qw.term(2.0 * q.coef,
                        q.v1 == q.v2 ? m.vars[q.v1].name + " ^ 2"
                                     : m.vars[q.v1].name + " * " + m.vars[q.v2].name);
            out += " ] / 2";
        } else if (ew.empty()) {
            out += "0";
        }
    }
    out += '\n';
    if (!m.constraints.empty()) {
        out += "Subject To\n";
        for (const Constraint& c : m.constraints) {
            out += ' ';
            out += c.name;
            out += ": ";
            ExprWriter ew(out);
            for (const LinearTerm& t : c.terms) ew.term(t.coef, m.vars[t.var].name);
            switch (c.rel) {
                case Rel::Le: out += " <= "; break;
                case Rel::Ge: out += " >= "; break;
                case Rel::Eq: out += " = "; break;
            }
            out += num(c.rhs);
            out += '\n';
        }
    }
    out += "Bounds\n";
    for (const Variable& v : m.vars)
        out += ' ' + num(v.lo) + " <= " + v.name + " <= " + num(v.hi) + '\n';
    bool any_binary = false;
    for (const Variable& v : m.vars) any_binary |= v.type == VarType::Binary;
    if (any_binary) {
        out += "Binaries\n";
        int on_line = 0;
        for (const Variable& v : m.vars) {
            if (v.type != VarType::Binary) continue;
            out += ' ';
            out += v.name;
            if (++on_line == 10) {
                out += '\n';
                on_line = 0;
            }
        }
        if (on_line != 0) out += '\n';
    }
    out += "End\n";
    return out;
}

void write_lp_file(const MipModel& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << write_lp(m);
}

namespace {

struct Token {
    enum Kind { Name, Number, Op } kind;
    std::string text;
    double value = 0.0;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> toks;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '\\') {  // comment to end of line
            while (i < n && text[i] != '\n') ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                             text[j] == '_' || text[j] == '.'))
                ++j;
            toks.push_back({Token::Name, text.substr(i, j - i), 0.0});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(text.c_str() + i, &end);
            toks.push_back({Token::Number, text.substr(i, end - (text.c_str() + i)), v});
            i = end - text.c_str();
        } else if (c == '<' || c == '>') {
            std::size_t j = i + 1;
            if (j < n && text[j] == '=') ++j;
            toks.push_back({Token::Op, text.substr(i, j - i), 0.0});
            i = j;
        } else {
            toks.push_back({Token::Op, std::string(1, c), 0.0});
            ++i;
        }
    }
    return toks;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

class Parser {
 public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    MipModel run() {
        while (pos_ < toks_.size()) {
            const std::string kw = keyword();
            if (kw == "minimize" || kw == "min") {
                model_.sense = Sense::Minimize;
                parse_objective();
            } else if (kw == "maximize" || kw == "max") {
                model_.sense = Sense::Maximize;
                parse_objective();
            } else if (kw == "subject") {
                expect_name("to");
                parse_rows();
            } else if (kw == "bounds") {
                parse_bounds();
            } else if (kw == "binaries" || kw == "binary" || kw == "bin") {
                parse_binaries();
            } else if (kw == "end") {
                break;
            } else {
                throw Error("unexpected token in LP file: " + toks_[pos_].text);
            }
        }
        for (auto& v : model_.vars)
            if (v.type == VarType::Binary && !bounded_.count(v.name)) {
                v.lo = 0.0;
                v.hi = 1.0;
            }
        return std::move(model_);
    }

 private:
    bool at_section() const {
        if (pos_ >= toks_.size() || toks_[pos_].kind != Token::Name) return false;
        const std::string kw = lower(toks_[pos_].text);
        return kw == "minimize" || kw == "maximize" || kw == "min" || kw == "max" ||
               kw == "subject" || kw == "bounds" || kw == "binaries" || kw == "binary" ||
               kw == "bin" || kw == "end";
    }

    std::string keyword() {
        if (toks_[pos_].kind != Token::Name)
            throw Error("expected section keyword in LP file");
        return lower(toks_[pos_++].text);
    }

    void expect_name(const std::string& want) {
        if (pos_ >= toks_.size() || lower(toks_[pos_].text) != want)
            throw Error("malformed LP file near 'subject'");
        ++pos_;
    }

    bool try_op(const std::string& op) {
        if (pos_ < toks_.size() && toks_[pos_].kind == Token::Op &&
            toks_[pos_].text == op) {
            ++pos_;
            return true;
        }
        return false;
    }

    int var_id(const std::string& name) {
        const auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        const int id =
            model_.add_var(name, 0.0, std::numeric_limits<double>::infinity());
        ids_.emplace(name, id);
        return id;
    }

    double signed_number() {
        double sign = 1.0;
        while (pos_ < toks_.size() && toks_[pos_].kind == Token::Op) {
            if (toks_[pos_].text == "-") sign = -sign;
            else if (toks_[pos_].text != "+") break;
            ++pos_;
        }
        if (pos_ >= toks_.size() || toks_[pos_].kind != Token::Number)
            throw Error("expected number in LP file");
        return sign * toks_[pos_++].value;
    }

    // Parses "name:" if present (lookahead for ':').
    std::string row_label() {
        if (pos_ + 1 < toks_.size() && toks_[pos_].kind == Token::Name &&
            toks_[pos_ + 1].kind == Token::Op && toks_[pos_ + 1].text == ":") {
            const std::string label = toks_[pos_].text;
            pos_ += 2;
            return label;
        }
        return "";
    }

    // Linear expression; stops at a relational operator or section keyword.
    // Returns accumulated constant (bare numbers).
    double parse_terms(std::vector<LinearTerm>* terms) {
        double constant = 0.0;
        while (pos_ < toks_.size() && !at_section()) {
            if (toks_[pos_].kind == Token::Op &&
                (toks_[pos_].text == "<=" || toks_[pos_].text == ">=" ||
                 toks_[pos_].text == "=" || toks_[pos_].text == "["))
                break;
            double sign = 1.0;
            while (pos_ < toks_.size() && toks_[pos_].kind == Token::Op &&
                   toks_[pos_].text != "[") {
                if (toks_[pos_].text == "-") sign = -sign;
                else if (toks_[pos_].text != "+") throw Error("bad operator in LP expression");
                ++pos_;
            }
            if (pos_ < toks_.size() && toks_[pos_].kind == Token::Op &&
                toks_[pos_].text == "[")
                break;  // the sign belongs to the quadratic bracket
            if (pos_ >= toks_.size() || at_section()) break;
            double coef = 1.0;
            if (toks_[pos_].kind == Token::Number) coef = toks_[pos_++].value;
            if (pos_ < toks_.size() && toks_[pos_].kind == Token::Name && !at_section()) {
                terms->push_back({var_id(toks_[pos_].text), sign * coef});
                ++pos_;
            } else {
                constant += sign * coef;
            }
        }
        return constant;
    }

    void parse_quadratic() {
        if (!try_op("[")) return;
        while (pos_ < toks_.size() && !try_op("]")) {
            double sign = 1.0;
            while (pos_ < toks_.size() && toks_[pos_].kind == Token::Op) {
                if (toks_[pos_].text == "-") sign = -sign;
                else if (toks_[pos_].text != "+") throw Error("bad quadratic term");
                ++pos_;
            }
            if (pos_ + 1 >= toks_.size()) throw Error("unterminated quadratic bracket");
            double coef = 1.0;
            if (toks_[pos_].kind == Token::Number) coef = toks_[pos_++].value;
            const int v1 = var_id(toks_[pos_++].text);
            int v2 = v1;
            if (try_op("^")) {
                if (pos_ >= toks_.size() || toks_[pos_].kind != Token::Number ||
                    toks_[pos_].value != 2.0)
                    throw Error("only squared quadratic terms supported");
                ++pos_;
            } else if (try_op("*")) {
                if (pos_ >= toks_.size() || toks_[pos_].kind != Token::Name)
                    throw Error("malformed quadratic term");
                v2 = var_id(toks_[pos_++].text);
            } else {
                throw Error("malformed quadratic term");
            }
            model_.quadratic.push_back({v1, v2, sign * coef / 2.0});
        }
        if (!try_op("/")) throw Error("quadratic bracket must end with / 2");
        if (pos_ >= toks_.size() || toks_[pos_].kind != Token::Number ||
            toks_[pos_].value != 2.0)
            throw Error("quadratic bracket must end with / 2");
        ++pos_;
    }

    void parse_objective() {
        row_label();
        model_.objective_constant += parse_terms(&model_.objective);
        parse_quadratic();
        // A trailing "+ constant" may follow the bracket.
        model_.objective_constant += parse_terms(&model_.objective);
    }

    void parse_rows() {
        while (pos_ < toks_.size() && !at_section()) {
            Constraint c;
            c.name = row_label();
            parse_terms(&c.terms);
            if (pos_ >= toks_.size() || toks_[pos_].kind != Token::Op)
                throw Error("constraint without relation in LP file");
            const std::string rel = toks_[pos_++].text;
            if (rel == "<=") c.rel = Rel::Le;
            else if (rel == ">=") c.rel = Rel::Ge;
            else if (rel == "=") c.rel = Rel::Eq;
            else throw Error("unknown relation " + rel);
            c.rhs = signed_number();
            if (c.name.empty()) c.name = "r" + std::to_string(model_.constraints.size());
            model_.constraints.push_back(std::move(c));
        }
    }

    double bound_value() {
        if (pos_ < toks_.size() && toks_[pos_].kind == Token::Op &&
            (toks_[pos_].text == "+" || toks_[pos_].text == "-")) {
            const double sign = toks_[pos_].text == "-" ? -1.0 : 1.0;
            if (pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == Token::Name &&
                lower(toks_[pos_ + 1].text) == "inf") {
                pos_ += 2;
                return sign * std::numeric_limits<double>::infinity();
            }
        }
        return signed_number();
    }

    void parse_bounds() {
        while (pos_ < toks_.size() && !at_section()) {
            if (toks_[pos_].kind == Token::Name) {  // "name <= hi" or "name = v"
                const int v = var_id(toks_[pos_++].text);
                if (try_op("=")) {
                    const double val = bound_value();
                    model_.vars[v].lo = model_.vars[v].hi = val;
                } else if (try_op("<=")) {
                    model_.vars[v].hi = bound_value();
                } else if (try_op(">=")) {
                    model_.vars[v].lo = bound_value();
                } else {
                    throw Error("malformed bound line");
                }
                bounded_.insert(model_.vars[v].name);
            } else {  // "lo <= name <= hi"
                const double lo = bound_value();
                if (!try_op("<=")) throw Error("malformed bound line");
                const int v = var_id(toks_[pos_++].text);
                model_.vars[v].lo = lo;
                if (try_op("<=")) model_.vars[v].hi = bound_value();
                bounded_.insert(model_.vars[v].name);
            }
        }
    }

    void parse_binaries() {
        while (pos_ < toks_.size() && !at_section()) {
            if (toks_[pos_].kind != Token::Name) throw Error("bad token in Binaries");
            model_.vars[var_id(toks_[pos_++].text)].type = VarType::Binary;
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    MipModel model_;
    std::map<std::string, int> ids_;
    std::set<std::string> bounded_;
};

}  // namespace

MipModel parse_lp(const std::string& text) { return Parser(text).run(); }

MipModel parse_lp_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_lp(ss.str());
}

}  // namespace cdcpath
