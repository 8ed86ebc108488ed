#include "parse.hpp"

#include "errors.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace crn {

namespace {

struct Line {
    int number;
    std::string text;  // comment stripped, arrow glyph normalised
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string s(text.substr(pos, end - pos));
        ++number;
        if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
        if (!s.empty() && s.back() == '\r') s.pop_back();
        // U+2192 is three bytes; pad to keep columns of later tokens stable-ish.
        for (std::size_t a; (a = s.find("\xE2\x86\x92")) != std::string::npos;) s.replace(a, 3, " ->");
        if (s.find_first_not_of(" \t") != std::string::npos) out.push_back({number, s});
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Cursor {
public:
    Cursor(const Line& l, std::size_t begin = 0, std::size_t end = std::string::npos)
        : line_(l), pos_(begin), end_(std::min(end, l.text.size())) {}

    void skip_ws() {
        while (pos_ < end_ && (line_.text[pos_] == ' ' || line_.text[pos_] == '\t' || line_.text[pos_] == ',')) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= end_;
    }
    char peek() const { return pos_ < end_ ? line_.text[pos_] : '\0'; }
    void advance(std::size_t k = 1) { pos_ += k; }
    std::size_t pos() const { return pos_; }
    int column() const { return static_cast<int>(pos_) + 1; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_.number, column()); }

    std::string identifier() {
        skip_ws();
        if (!ident_start(peek())) fail("expected a name");
        std::size_t b = pos_;
        while (pos_ < end_ && ident_char(line_.text[pos_])) ++pos_;
        return line_.text.substr(b, pos_ - b);
    }

    // Numeric literal: optional sign, digits, '.', '/'.
    std::string number_token() {
        skip_ws();
        std::size_t b = pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        while (pos_ < end_ && (std::isdigit(static_cast<unsigned char>(line_.text[pos_])) || line_.text[pos_] == '.' ||
                               line_.text[pos_] == '/'))
            ++pos_;
        return line_.text.substr(b, pos_ - b);
    }

    Rational rational() {
        int col = column();
        std::string tok = number_token();
        try {
            return parse_rational(tok);
        } catch (const std::exception&) {
            throw ParseError("bad number '" + tok + "'", line_.number, col);
        }
    }

    // Everything up to the next separator.
    std::string word() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < end_ && line_.text[pos_] != ' ' && line_.text[pos_] != '\t' && line_.text[pos_] != ',') ++pos_;
        return line_.text.substr(b, pos_ - b);
    }

private:
    const Line& line_;
    std::size_t pos_;
    std::size_t end_;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool starts_with_keyword(const std::string& s, const std::string& kw) {
    std::string t = trim(s);
    return t.compare(0, kw.size(), kw) == 0 && (t.size() == kw.size() || t[kw.size()] == ' ' || t[kw.size()] == '\t');
}

// "label:" prefix; returns the label and moves the cursor past the colon.
std::string label_prefix(const Line& l, std::size_t& after) {
    auto colon = l.text.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'label:'", l.number, 1);
    std::string label = trim(l.text.substr(0, colon));
    if (label.empty()) throw ParseError("empty label", l.number, 1);
    for (char c : label)
        if (!ident_char(c) && c != '-' && c != '.')
            throw ParseError("bad label '" + label + "'", l.number, 1);
    after = colon + 1;
    return label;
}

}  // namespace

Network parse_network(std::string_view text) {
    Network net;
    std::map<std::string, int> index;
    auto species = [&](const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        int k = net.n();
        net.species.push_back(name);
        index.emplace(name, k);
        return k;
    };
    std::map<std::string, int> labels;

    auto parse_complex = [&](const Line& l, std::size_t b, std::size_t e) {
        Complex c;
        Cursor cur(l, b, e);
        if (cur.done()) cur.fail("empty complex (write 0 for the zero complex)");
        if (cur.peek() == '0') {
            Cursor probe = cur;
            probe.advance();
            if (probe.done()) return c;
        }
        while (true) {
            cur.skip_ws();
            Rational coeff = 1;
            if (std::isdigit(static_cast<unsigned char>(cur.peek())) || cur.peek() == '.') {
                int col = cur.column();
                coeff = cur.rational();
                if (coeff <= 0) throw ParseError("coefficients must be positive", l.number, col);
            }
            std::string name = cur.identifier();
            c.add(species(name), coeff);
            if (cur.done()) break;
            if (cur.peek() != '+') cur.fail("expected '+' or end of complex");
            cur.advance();
        }
        return c;
    };

    for (const Line& l : split_lines(text)) {
        if (starts_with_keyword(l.text, "@species")) {
            Cursor cur(l, l.text.find("@species") + 8);
            while (!cur.done()) {
                int col = cur.column();
                std::string name = cur.identifier();
                if (index.count(name)) throw ParseError("species '" + name + "' declared twice", l.number, col);
                species(name);
            }
            continue;
        }
        if (trim(l.text)[0] == '@') throw ParseError("unknown directive", l.number, 1);
        std::size_t body = 0;
        std::string label;
        auto arrow = l.text.find("->");
        if (arrow == std::string::npos) throw ParseError("expected '->'", l.number, static_cast<int>(l.text.size()) + 1);
        auto colon = l.text.find(':');
        if (colon != std::string::npos && colon < arrow) {
            label = label_prefix(l, body);
        } else {
            label = "r" + std::to_string(net.m() + 1);
        }
        if (l.text.find("->", arrow + 2) != std::string::npos)
            throw ParseError("more than one arrow", l.number, static_cast<int>(l.text.find("->", arrow + 2)) + 1);
        if (labels.count(label)) throw ParseError("duplicate reaction label '" + label + "'", l.number, 1);
        Reaction r{label, parse_complex(l, body, arrow), parse_complex(l, arrow + 2, std::string::npos)};
        if (r.reactant == r.product)
            throw ParseError("(y,y) not allowed: reactant and product complexes coincide", l.number,
                             static_cast<int>(arrow) + 1);
        labels.emplace(label, net.m());
        net.reactions.push_back(std::move(r));
    }
    if (net.reactions.empty()) throw ParseError("no reactions", 0, 0);
    net.validate();
    return net;
}

namespace {

std::string print_complex(const Complex& c, const Network& net) {
    if (c.is_zero()) return "0";
    std::string out;
    for (const auto& [j, q] : c.coeff) {
        if (!out.empty()) out += " + ";
        if (q != 1) out += to_string(q) + " ";
        out += net.species[j];
    }
    return out;
}

int sign_token(const std::string& t) {
    if (t == "+" || t == "+1" || t == "1") return 1;
    if (t == "-" || t == "-1") return -1;
    if (t == "0") return 0;
    return 2;
}

const char* sign_text(int s) { return s > 0 ? "+" : s < 0 ? "-" : "0"; }

}  // namespace

std::string print_network(const Network& net) {
    std::ostringstream os;
    os << "@species";
    for (const auto& s : net.species) os << ' ' << s;
    os << '\n';
    for (const auto& r : net.reactions)
        os << r.label << ": " << print_complex(r.reactant, net) << " -> " << print_complex(r.product, net) << '\n';
    return os.str();
}

InfluenceSpec parse_influence(std::string_view text, const Network& net) {
    InfluenceSpec out = zero_influence(net);
    bool base_seen = false;
    std::map<std::pair<int, int>, int> explicit_;
    std::vector<std::pair<std::pair<int, int>, int>> order;
    for (const Line& l : split_lines(text)) {
        std::string t = trim(l.text);
        if (t[0] == '@') {
            if (base_seen) throw ParseError("more than one base keyword", l.number, 1);
            base_seen = true;
            if (t == "@complex") out = complex_influence(net);
            else if (t == "@reaction") out = reaction_influence(net);
            else if (t == "@zero") out = zero_influence(net);
            else throw ParseError("unknown keyword '" + t + "'", l.number, 1);
            continue;
        }
        std::size_t body = 0;
        std::string label = label_prefix(l, body);
        int u = net.reaction_index(label);
        if (u < 0) throw ParseError("unknown reaction '" + label + "'", l.number, 1);
        Cursor cur(l, body);
        while (!cur.done()) {
            int col = cur.column();
            std::string tok = cur.word();
            auto c = tok.rfind(':');
            if (c == std::string::npos) throw ParseError("expected species:sign, got '" + tok + "'", l.number, col);
            std::string name = tok.substr(0, c);
            int j = net.species_index(name);
            if (j < 0) throw ParseError("unknown species '" + name + "'", l.number, col);
            int s = sign_token(tok.substr(c + 1));
            if (s == 2) throw ParseError("sign must be +, - or 0", l.number, col + static_cast<int>(c) + 1);
            auto key = std::make_pair(u, j);
            auto it = explicit_.find(key);
            if (it != explicit_.end() && it->second != s)
                throw ParseError("conflicting assignment for " + label + ", " + name, l.number, col);
            explicit_[key] = s;
        }
    }
    for (const auto& [key, s] : explicit_) out.set(key.first, key.second, s);
    return out;
}

std::string print_influence(const InfluenceSpec& i, const Network& net) {
    std::ostringstream os;
    for (int u = 0; u < i.m(); ++u) {
        std::string row;
        for (int j = 0; j < i.n(); ++j)
            if (i.at(u, j) != 0) row += " " + net.species[j] + ":" + sign_text(i.at(u, j));
        if (!row.empty()) os << net.reactions[u].label << ":" << row << '\n';
    }
    return os.str();
}

KineticOrder parse_order(std::string_view text, const Network& net, const std::optional<InfluenceSpec>& i) {
    KineticOrder v;
    v.v.assign(static_cast<std::size_t>(net.m()), std::vector<Rational>(static_cast<std::size_t>(net.n()), Rational(0)));
    bool base_seen = false;
    std::map<std::pair<int, int>, Rational> explicit_;
    for (const Line& l : split_lines(text)) {
        std::string t = trim(l.text);
        if (t[0] == '@') {
            if (base_seen) throw ParseError("more than one base keyword", l.number, 1);
            base_seen = true;
            if (t == "@mass-action") v = mass_action_order(net);
            else if (t == "@zero") {
            } else
                throw ParseError("unknown keyword '" + t + "'", l.number, 1);
            continue;
        }
        std::size_t body = 0;
        std::string label = label_prefix(l, body);
        int u = net.reaction_index(label);
        if (u < 0) throw ParseError("unknown reaction '" + label + "'", l.number, 1);
        Cursor cur(l, body);
        while (!cur.done()) {
            int col = cur.column();
            std::string tok = cur.word();
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw ParseError("expected species=value, got '" + tok + "'", l.number, col);
            std::string name = tok.substr(0, eq);
            int j = net.species_index(name);
            if (j < 0) throw ParseError("unknown species '" + name + "'", l.number, col);
            Rational q;
            try {
                q = parse_rational(tok.substr(eq + 1));
            } catch (const std::exception&) {
                throw ParseError("bad number '" + tok.substr(eq + 1) + "'", l.number, col + static_cast<int>(eq) + 1);
            }
            auto key = std::make_pair(u, j);
            auto it = explicit_.find(key);
            if (it != explicit_.end() && it->second != q)
                throw ParseError("conflicting assignment for " + label + ", " + name, l.number, col);
            explicit_[key] = q;
        }
    }
    for (const auto& [key, q] : explicit_) v.v[key.first][key.second] = q;
    if (i) {
        check_shape(*i, net);
        for (int u = 0; u < net.m(); ++u)
            for (int j = 0; j < net.n(); ++j)
                if (sgn(v.v[u][j]) != i->at(u, j))
                    throw PreconditionError("kinetic order of " + net.species[j] + " in " + net.reactions[u].label +
                                            " has the wrong sign for the influence");
    }
    return v;
}

InteractionGraph parse_sign_matrix(std::string_view text) {
    std::vector<std::vector<int8_t>> rows;
    for (const Line& l : split_lines(text)) {
        Cursor cur(l);
        std::vector<int8_t> row;
        while (!cur.done()) {
            int col = cur.column();
            std::string tok = cur.word();
            int s = sign_token(tok);
            if (s == 2) throw ParseError("expected -, 0 or +, got '" + tok + "'", l.number, col);
            row.push_back(static_cast<int8_t>(s));
        }
        if (!rows.empty() && row.size() != rows[0].size())
            throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(rows[0].size()),
                             l.number, 1);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty sign matrix", 0, 0);
    if (rows.size() != rows[0].size()) throw ParseError("sign matrix is not square", 0, 0);
    InteractionGraph g;
    g.g = std::move(rows);
    return g;
}

Partition parse_partition(std::string_view text, const InteractionGraph& g) {
    Partition p = Partition::all_h1(g);
    const int n = g.n();
    auto node = [&](const std::string& tok, const Line& l, int col) {
        try {
            std::size_t used = 0;
            int k = std::stoi(tok, &used);
            if (used == tok.size() && k >= 1 && k <= n) return k - 1;
        } catch (const std::exception&) {
        }
        throw ParseError("node must be a number in 1.." + std::to_string(n) + ", got '" + tok + "'", l.number, col);
    };
    for (const Line& l : split_lines(text)) {
        auto colon = l.text.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'node:'", l.number, 1);
        int i = node(trim(l.text.substr(0, colon)), l, 1);
        Cursor cur(l, colon + 1);
        while (!cur.done()) {
            int col = cur.column();
            std::string tok = cur.word();
            auto c = tok.find(':');
            if (c == std::string::npos) throw ParseError("expected node:side, got '" + tok + "'", l.number, col);
            int j = node(tok.substr(0, c), l, col);
            std::string side = tok.substr(c + 1);
            if (side != "1" && side != "2") throw ParseError("side must be 1 or 2", l.number, col);
            if (g.at(j, i) == 0)
                throw ParseError("no edge " + std::to_string(j + 1) + " -> " + std::to_string(i + 1), l.number, col);
            p.side[i][j] = static_cast<int8_t>(side[0] - '0');
        }
    }
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

InfluenceSpec influence_argument(const std::string& arg, const Network& net) {
    if (!arg.empty() && arg[0] == '@') return parse_influence(arg, net);
    return parse_influence(read_file(arg), net);
}

}  // namespace crn
