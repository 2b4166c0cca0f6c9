#include "zigzag/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace zigzag {

namespace {

std::string rat_token(const Rat& r) { return r.num().get_str() + "/" + r.den().get_str(); }

struct LineReader {
    std::istream& in;
    int line_no = 0;
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            // trim
            auto b = raw.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            auto e = raw.find_last_not_of(" \t\r");
            out = raw.substr(b, e - b + 1);
            return true;
        }
        return false;
    }
};

PLMap parse_plmap_body(LineReader& rd, bool header_consumed) {
    std::string line;
    if (!header_consumed) {
        if (!rd.next(line) || line != "plmap")
            throw ParseError("expected 'plmap' header", rd.line_no);
    }
    std::vector<Breakpoint> pts;
    std::streampos mark;
    while (true) {
        mark = rd.in.tellg();
        int mark_line = rd.line_no;
        if (!rd.next(line)) break;
        std::istringstream ls(line);
        std::string xs, ys, extra;
        bool two_tokens = bool(ls >> xs >> ys) && !(ls >> extra);
        if (!two_tokens) {
            // another block header or vertex-set line: rewind for the caller
            rd.in.clear();
            rd.in.seekg(mark);
            rd.line_no = mark_line;
            break;
        }
        try {
            pts.push_back({Rat::parse(xs), Rat::parse(ys)});
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()), rd.line_no);
        }
        if (pts.size() >= 2 && !(pts[pts.size() - 2].x < pts.back().x))
            throw ParseError("breakpoint x-coordinates must increase", rd.line_no);
    }
    if (pts.empty()) throw ParseError("plmap with no breakpoints", rd.line_no);
    try {
        return PLMap(std::move(pts));
    } catch (const DomainError& e) {
        throw ParseError(e.what(), rd.line_no);
    }
}

} // namespace

std::string serialize_plmap(const PLMap& m) {
    std::ostringstream os;
    os << "plmap\n";
    for (const auto& p : m.breakpoints()) os << rat_token(p.x) << " " << rat_token(p.y) << "\n";
    return os.str();
}

PLMap parse_plmap(std::istream& in) {
    LineReader rd{in};
    return parse_plmap_body(rd, false);
}

PLMap parse_plmap_string(const std::string& s) {
    std::istringstream in(s);
    return parse_plmap(in);
}

std::string serialize_system(const SystemPrefix& p) {
    std::ostringstream os;
    os << "system " << p.size() << "\n";
    for (const auto& m : p.maps) os << serialize_plmap(m.map());
    return os.str();
}

SystemPrefix parse_system(std::istream& in) {
    LineReader rd{in};
    std::string line;
    if (!rd.next(line)) throw ParseError("empty system file", rd.line_no);
    std::istringstream hs(line);
    std::string word;
    std::size_t n = 0;
    if (!(hs >> word >> n) || word != "system")
        throw ParseError("expected 'system N' header", rd.line_no);
    SystemPrefix out;
    for (std::size_t i = 0; i < n; ++i) out.maps.emplace_back(parse_plmap_body(rd, false));
    return out;
}

std::string serialize_simplicial(const SimplicialSystem& sys) {
    std::ostringstream os;
    os << "simplicial " << sys.maps.size() << "\n";
    for (const auto& m : sys.maps) os << serialize_plmap(m);
    for (std::size_t n = 0; n < sys.S.size(); ++n) {
        os << "S " << (n + 1) << ":";
        for (const auto& x : sys.S[n]) os << " " << rat_token(x);
        os << "\n";
    }
    return os.str();
}

SimplicialSystem parse_simplicial(std::istream& in) {
    LineReader rd{in};
    std::string line;
    if (!rd.next(line)) throw ParseError("empty simplicial file", rd.line_no);
    std::istringstream hs(line);
    std::string word;
    std::size_t n = 0;
    if (!(hs >> word >> n) || word != "simplicial")
        throw ParseError("expected 'simplicial N' header", rd.line_no);
    SimplicialSystem out;
    for (std::size_t i = 0; i < n; ++i) out.maps.push_back(parse_plmap_body(rd, false));
    for (std::size_t lvl = 1; lvl <= n + 1; ++lvl) {
        if (!rd.next(line)) throw ParseError("missing vertex-set line", rd.line_no);
        std::istringstream ls(line);
        std::string s, idx;
        if (!(ls >> s >> idx) || s != "S" || idx != std::to_string(lvl) + ":")
            throw ParseError("expected 'S " + std::to_string(lvl) + ":' line", rd.line_no);
        std::vector<Rat> set;
        std::string tok;
        while (ls >> tok) set.push_back(Rat::parse(tok));
        out.S.push_back(std::move(set));
    }
    return out;
}

FileKind detect_kind(std::istream& in) {
    LineReader rd{in};
    std::string line;
    if (!rd.next(line)) throw ParseError("empty file", 0);
    in.seekg(0);
    std::istringstream hs(line);
    std::string word;
    hs >> word;
    if (word == "plmap") return FileKind::plmap;
    if (word == "system") return FileKind::system;
    if (word == "simplicial") return FileKind::simplicial;
    throw ParseError("unknown header '" + word + "'", 1);
}

namespace {
std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return in;
}
} // namespace

PLMap load_plmap(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_plmap(in);
}

SystemPrefix load_system(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_system(in);
}

SimplicialSystem load_simplicial(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_simplicial(in);
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path, 0);
    out << text;
}

std::string contour_report(const ContourData& cd) {
    std::ostringstream os;
    for (std::size_t i = 1; i <= cd.n(); ++i)
        os << "right " << cd.alpha(i).point << " " << cd.alpha(i).value << " "
           << to_string(cd.alpha(i).orient) << "\n";
    for (std::size_t j = 1; j <= cd.m(); ++j)
        os << "left " << cd.beta(j).point << " " << cd.beta(j).value << " "
           << to_string(cd.beta(j).orient) << "\n";
    return os.str();
}

std::string zigzag_certificate_json(const ZigzagFreeReport& rep) {
    nlohmann::json j;
    j["certificate"] = rep.certificate;
    j["maps"] = nlohmann::json::array();
    for (const auto& r : rep.per_map) j["maps"].push_back({{"orientations", r.verdict()}});
    return j.dump(2) + "\n";
}

std::string provenance_json(const BridgedFactor& bf) {
    nlohmann::json j;
    j["verified"] = bf.report.all_pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : bf.report.checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["intervals"] = nlohmann::json::array();
    for (const auto& p : bf.provenance)
        j["intervals"].push_back({{"lo", p.lo.str()}, {"hi", p.hi.str()}, {"tag", p.tag}});
    j["B1"] = nlohmann::json::array();
    for (const auto& s : bf.b1) j["B1"].push_back(s.i);
    j["B2"] = nlohmann::json::array();
    for (const auto& s : bf.b2)
        j["B2"].push_back({{"j", s.j},
                           {"x1", s.x1.str()},
                           {"x2", s.x2.str()},
                           {"partner", s.partner}});
    return j.dump(2) + "\n";
}

std::string rewire_certificate_json(const RewireResult& r) {
    nlohmann::json j;
    j["certificate"] = r.certificates.certificate;
    j["maps"] = nlohmann::json::array();
    for (const auto& rep : r.certificates.per_map)
        j["maps"].push_back({{"orientations", rep.verdict()}});
    j["trailing_levels"] = r.trailing_levels;
    return j.dump(2) + "\n";
}

} // namespace zigzag
