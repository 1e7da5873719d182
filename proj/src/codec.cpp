#include "kleinsep/codec.hpp"

#include "kleinsep/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace kleinsep {

namespace {

bool valid_id(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '@' ||
                  c == '+' || c == '\'' || c == '-';
        if (!ok) return false;
    }
    return true;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

Rat parse_rat_or_throw(const std::string& s, int line) {
    Rat r;
    if (!parse_rat(s, r)) throw parse_error(line, "bad rational '" + s + "'");
    return r;
}

PathItem parse_item(const std::string& s, int line) {
    if (s == "V+") return PathItem::token(GluingToken::VPlus);
    if (s == "V-") return PathItem::token(GluingToken::VMinus);
    if (s == "H+") return PathItem::token(GluingToken::HPlus);
    if (s == "H-") return PathItem::token(GluingToken::HMinus);
    if (s == "Z") return PathItem::token(GluingToken::Z);
    if (s.size() >= 5 && s.front() == '(' && s.back() == ')') {
        std::string body = s.substr(1, s.size() - 2);
        size_t comma = body.find(',');
        if (comma == std::string::npos) throw parse_error(line, "point item needs a comma");
        return PathItem::point(Point{parse_rat_or_throw(body.substr(0, comma), line),
                                     parse_rat_or_throw(body.substr(comma + 1), line)});
    }
    throw parse_error(line, "bad path item '" + s + "'");
}

std::string item_text(const PathItem& it) {
    if (!it.is_token)
        return "(" + rat_to_string(it.pt.x) + "," + rat_to_string(it.pt.y) + ")";
    switch (it.tok) {
    case GluingToken::VPlus: return "V+";
    case GluingToken::VMinus: return "V-";
    case GluingToken::HPlus: return "H+";
    case GluingToken::HMinus: return "H-";
    case GluingToken::Z: return "Z";
    }
    return "?";
}

// Canonical id order: short before long, ties lexicographic.
bool id_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Coordinates must stay inside the fundamental polygon; leaving it is only
// possible through a gluing token.
void check_range(SurfaceKind s, const Point& p, int line) {
    bool ok = s == SurfaceKind::ProjectivePlane
                  ? p.x * p.x + p.y * p.y <= 1
                  : p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1;
    if (!ok) throw parse_error(line, "point outside the fundamental polygon");
}

} // namespace

Drawing read_drawing(const std::string& text) {
    Drawing d;
    bool have_surface = false;
    PartLabel current = PartLabel::None;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::vector<std::string> tok = split_ws(line);
        if (tok.empty()) continue;
        const std::string& head = tok[0];
        if (head == "surface") {
            if (have_surface) throw parse_error(lineno, "surface declared twice");
            if (tok.size() != 2) throw parse_error(lineno, "surface wants one argument");
            if (tok[1] == "klein") d.surface = SurfaceKind::KleinBottle;
            else if (tok[1] == "projective") d.surface = SurfaceKind::ProjectivePlane;
            else if (tok[1] == "plane") d.surface = SurfaceKind::Plane;
            else throw parse_error(lineno, "unknown surface '" + tok[1] + "'");
            have_surface = true;
        } else if (head == "part") {
            if (tok.size() != 2) throw parse_error(lineno, "part wants one argument");
            if (tok[1] == "H") current = PartLabel::H;
            else if (tok[1] == "K") current = PartLabel::K;
            else if (tok[1] == "-") current = PartLabel::None;
            else throw parse_error(lineno, "unknown part '" + tok[1] + "'");
        } else if (head == "v") {
            if (!have_surface) throw parse_error(lineno, "surface must come first");
            if (tok.size() != 4) throw parse_error(lineno, "v wants id, x, y");
            if (!valid_id(tok[1])) throw parse_error(lineno, "bad id '" + tok[1] + "'");
            Point p{parse_rat_or_throw(tok[2], lineno), parse_rat_or_throw(tok[3], lineno)};
            check_range(d.surface, p, lineno);
            d.vertices.push_back(Vertex{tok[1], std::move(p), current});
        } else if (head == "e") {
            if (!have_surface) throw parse_error(lineno, "surface must come first");
            if (tok.size() < 5 || tok[4] != ":")
                throw parse_error(lineno, "e wants id, v1, v2, then ':'");
            for (int i : {1, 2, 3})
                if (!valid_id(tok[i])) throw parse_error(lineno, "bad id '" + tok[i] + "'");
            PolylineEdge e;
            e.id = tok[1];
            e.v1 = tok[2];
            e.v2 = tok[3];
            e.part = current;
            for (size_t i = 5; i < tok.size(); ++i) {
                PathItem it = parse_item(tok[i], lineno);
                if (!it.is_token) check_range(d.surface, it.pt, lineno);
                e.path.push_back(std::move(it));
            }
            d.edges.push_back(std::move(e));
        } else {
            throw parse_error(lineno, "unknown directive '" + head + "'");
        }
    }
    if (!have_surface) throw parse_error(lineno == 0 ? 1 : lineno, "missing surface line");
    return d;
}

std::string write_drawing(const Drawing& d) {
    std::ostringstream os;
    os << "surface ";
    switch (d.surface) {
    case SurfaceKind::KleinBottle: os << "klein"; break;
    case SurfaceKind::ProjectivePlane: os << "projective"; break;
    case SurfaceKind::Plane: os << "plane"; break;
    }
    os << "\n";

    for (PartLabel part : {PartLabel::None, PartLabel::H, PartLabel::K}) {
        std::vector<const Vertex*> vs;
        for (const Vertex& v : d.vertices)
            if (v.part == part) vs.push_back(&v);
        std::vector<const PolylineEdge*> es;
        for (const PolylineEdge& e : d.edges)
            if (e.part == part) es.push_back(&e);
        if (vs.empty() && es.empty()) continue;
        if (part == PartLabel::H) os << "part H\n";
        if (part == PartLabel::K) os << "part K\n";
        std::sort(vs.begin(), vs.end(),
                  [](const Vertex* a, const Vertex* b) { return id_less(a->id, b->id); });
        std::sort(es.begin(), es.end(),
                  [](const PolylineEdge* a, const PolylineEdge* b) { return id_less(a->id, b->id); });
        for (const Vertex* v : vs)
            os << "v " << v->id << " " << rat_to_string(v->pos.x) << " "
               << rat_to_string(v->pos.y) << "\n";
        for (const PolylineEdge* e : es) {
            os << "e " << e->id << " " << e->v1 << " " << e->v2 << " :";
            for (const PathItem& it : e->path) os << " " << item_text(it);
            os << "\n";
        }
    }
    return os.str();
}

Drawing read_drawing_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_drawing(buf.str());
}

void write_drawing_file(const std::string& path, const Drawing& d) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open " + path + " for writing");
    out << write_drawing(d);
}

} // namespace kleinsep
