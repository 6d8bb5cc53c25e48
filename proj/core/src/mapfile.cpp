#include "torusflux/mapfile.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "torusflux/report.hpp"

namespace torusflux {

namespace {

std::string make_message(int line, int col, const std::string& message) {
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << message;
    return os.str();
}

struct Token {
    std::string text;
    int col = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        tokens.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return tokens;
}

double parse_double(const std::string& text, int line, int col) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError(line, col, "expected a number, got '" + text + "'");
    }
    if (used != text.size()) {
        throw ParseError(line, col, "trailing characters in number '" + text + "'");
    }
    return v;
}

std::pair<double, double> parse_pair(const std::string& text, int line, int col) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos) {
        throw ParseError(line, col, "expected 'a,b', got '" + text + "'");
    }
    return {parse_double(text.substr(0, comma), line, col),
            parse_double(text.substr(comma + 1), line, col + static_cast<int>(comma) + 1)};
}

// key=value fields of one stanza, with per-key column tracking
class Fields {
public:
    Fields(const std::vector<Token>& tokens, std::size_t first, int line,
           const std::string& stanza)
        : line_(line), stanza_(stanza) {
        for (std::size_t i = first; i < tokens.size(); ++i) {
            const auto& tok = tokens[i];
            const std::size_t eq = tok.text.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw ParseError(line, tok.col, "expected key=value, got '" + tok.text + "'");
            }
            const std::string key = tok.text.substr(0, eq);
            if (map_.count(key)) {
                throw ParseError(line, tok.col, "duplicate key '" + key + "'");
            }
            map_[key] = {tok.text.substr(eq + 1), tok.col};
        }
    }

    double number(const std::string& key) {
        const auto& [text, col] = fetch(key);
        return parse_double(text, line_, col);
    }
    std::pair<double, double> pair(const std::string& key) {
        const auto& [text, col] = fetch(key);
        return parse_pair(text, line_, col);
    }
    bool has(const std::string& key) const { return map_.count(key) != 0; }
    int column(const std::string& key) const { return map_.at(key).second; }

    void finish() const {
        for (const auto& [key, value] : map_) {
            if (!used_.count(key)) {
                throw ParseError(line_, value.second,
                                 "unknown key '" + key + "' for stanza '" + stanza_ + "'");
            }
        }
    }

private:
    const std::pair<std::string, int>& fetch(const std::string& key) {
        auto it = map_.find(key);
        if (it == map_.end()) {
            throw ParseError(line_, 1,
                             "stanza '" + stanza_ + "' is missing key '" + key + "'");
        }
        used_.insert(key);
        return it->second;
    }

    int line_;
    std::string stanza_;
    std::map<std::string, std::pair<std::string, int>> map_;
    std::set<std::string> used_;
};

BumpProfile profile_from(Fields& fields, int line) {
    double inner = 1.0 / 3.0, outer = 2.0 / 3.0;
    int col = 1;
    if (fields.has("inner")) {
        col = fields.column("inner");
        inner = fields.number("inner");
    }
    if (fields.has("outer")) {
        col = fields.column("outer");
        outer = fields.number("outer");
    }
    try {
        return BumpProfile{inner, outer};
    } catch (const std::exception& e) {
        throw ParseError(line, col, e.what());
    }
}

}  // namespace

ParseError::ParseError(int line_, int col_, const std::string& message)
    : Error(make_message(line_, col_, message)), line(line_), col(col_) {}

MapDocument parse_map_text(std::string_view text) {
    MapDocument doc;
    std::vector<Generator> chain;
    bool have_header = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto tokens = tokenize(raw);
        if (tokens.empty()) continue;
        const std::string& kind = tokens[0].text;
        const int kcol = tokens[0].col;

        if (!have_header) {
            if (kind == "order=right-to-left") {
                have_header = true;
                continue;
            }
            if (kind.rfind("order=", 0) == 0) {
                throw ParseError(lineno, kcol,
                                 "unsupported composition order '" + kind.substr(6) +
                                     "' (only right-to-left)");
            }
            throw ParseError(lineno, kcol,
                             "missing header line 'order=right-to-left' before stanzas");
        }

        if (kind == "translate") {
            Fields fields(tokens, 1, lineno, kind);
            const double a = fields.number("a");
            const double b = fields.number("b");
            fields.finish();
            chain.push_back(Translation{a, b});
        } else if (kind == "hshear" || kind == "vshear") {
            Fields fields(tokens, 1, lineno, kind);
            const double eps = fields.number("eps");
            const int bcol = fields.has("band") ? fields.column("band") : 1;
            const auto [lo, hi] = fields.pair("band");
            const BumpProfile profile = profile_from(fields, lineno);
            fields.finish();
            const Interval band{lo, hi};
            if (!band.valid()) {
                throw ParseError(lineno, bcol, "band must satisfy 0 <= lo < hi <= 1");
            }
            if (kind == "hshear") {
                chain.push_back(HorizontalShear{eps, band, profile});
            } else {
                chain.push_back(VerticalShear{eps, band, profile});
            }
        } else if (kind == "disktwist") {
            Fields fields(tokens, 1, lineno, kind);
            const double cx = fields.number("cx");
            const double cy = fields.number("cy");
            const int rcol = fields.has("r") ? fields.column("r") : 1;
            const double r = fields.number("r");
            const double t = fields.number("t");
            const BumpProfile profile = profile_from(fields, lineno);
            fields.finish();
            if (!(r > 0.0 && r < 0.5)) {
                throw ParseError(lineno, rcol, "disk radius must lie in (0, 1/2)");
            }
            chain.push_back(DiskTwist{{cx, cy}, r, t, profile});
        } else if (kind == "disk") {
            if (tokens.size() < 2 || tokens[1].text.find('=') != std::string::npos) {
                throw ParseError(lineno, kcol, "disk stanza needs a name: disk NAME cx=.. cy=.. r=..");
            }
            const std::string name = tokens[1].text;
            Fields fields(tokens, 2, lineno, kind);
            const double cx = fields.number("cx");
            const double cy = fields.number("cy");
            const int rcol = fields.has("r") ? fields.column("r") : 1;
            const double r = fields.number("r");
            fields.finish();
            if (!(r > 0.0 && r < 0.5)) {
                throw ParseError(lineno, rcol, "disk radius must lie in (0, 1/2)");
            }
            if (doc.disks.count(name)) {
                throw ParseError(lineno, tokens[1].col, "duplicate disk name '" + name + "'");
            }
            doc.disks[name] = Disk{{cx, cy}, r};
        } else if (kind == "band") {
            if (tokens.size() != 3 || tokens[1].text.find('=') != std::string::npos) {
                throw ParseError(lineno, kcol, "band stanza needs: band NAME lo,hi");
            }
            const std::string name = tokens[1].text;
            const auto [lo, hi] = parse_pair(tokens[2].text, lineno, tokens[2].col);
            const Interval band{lo, hi};
            if (!band.valid()) {
                throw ParseError(lineno, tokens[2].col, "band must satisfy 0 <= lo < hi <= 1");
            }
            if (doc.bands.count(name)) {
                throw ParseError(lineno, tokens[1].col, "duplicate band name '" + name + "'");
            }
            doc.bands[name] = band;
        } else {
            throw ParseError(lineno, kcol, "unknown stanza '" + kind + "'");
        }
    }
    if (!have_header && !chain.empty()) {
        throw ParseError(1, 1, "missing header line 'order=right-to-left'");
    }
    doc.map = TorusMap(std::move(chain));
    return doc;
}

MapDocument load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open map file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_map_text(buf.str());
}

namespace {

struct SerializeVisitor {
    std::ostream& os;

    void operator()(const Translation& t) const {
        os << "translate a=" << format_sig17(t.dx) << " b=" << format_sig17(t.dy);
    }
    void operator()(const HorizontalShear& s) const {
        os << "hshear eps=" << format_sig17(s.eps) << " band=" << format_sig17(s.band.lo)
           << "," << format_sig17(s.band.hi) << " inner=" << format_sig17(s.profile.inner())
           << " outer=" << format_sig17(s.profile.outer());
    }
    void operator()(const VerticalShear& s) const {
        os << "vshear eps=" << format_sig17(s.eps) << " band=" << format_sig17(s.band.lo)
           << "," << format_sig17(s.band.hi) << " inner=" << format_sig17(s.profile.inner())
           << " outer=" << format_sig17(s.profile.outer());
    }
    void operator()(const DiskTwist& t) const {
        os << "disktwist cx=" << format_sig17(t.center.x) << " cy=" << format_sig17(t.center.y)
           << " r=" << format_sig17(t.radius) << " t=" << format_sig17(t.angle)
           << " inner=" << format_sig17(t.profile.inner())
           << " outer=" << format_sig17(t.profile.outer());
    }
};

}  // namespace

std::string serialize(const MapDocument& doc) {
    std::ostringstream os;
    os << "order=right-to-left\n";
    for (const Generator& g : doc.map.chain()) {
        std::visit(SerializeVisitor{os}, g);
        os << "\n";
    }
    for (const auto& [name, disk] : doc.disks) {
        os << "disk " << name << " cx=" << format_sig17(disk.center.x)
           << " cy=" << format_sig17(disk.center.y) << " r=" << format_sig17(disk.radius)
           << "\n";
    }
    for (const auto& [name, band] : doc.bands) {
        os << "band " << name << " " << format_sig17(band.lo) << "," << format_sig17(band.hi)
           << "\n";
    }
    return os.str();
}

}  // namespace torusflux
