#include "shapecalc/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "shapecalc/errors.hpp"

namespace shapecalc {

namespace {

// Yields non-empty, comment-stripped lines with their 1-based numbers.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++number_;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
            line = raw;
            return true;
        }
        return false;
    }
    std::size_t number() const { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

TriMesh build(std::vector<Vec3> v, std::vector<Triangle> f, std::size_t line) {
    try {
        return TriMesh(std::move(v), std::move(f));
    } catch (const MeshError& e) {
        throw ParseError(e.what(), line);
    }
}

TriMesh read_off(std::istream& in) {
    LineReader r(in);
    std::string line;
    if (!r.next(line)) throw ParseError("empty file", r.number());
    std::istringstream head(line);
    std::string magic;
    head >> magic;
    if (magic != "OFF") throw ParseError("expected OFF header", r.number());
    std::string counts_text;
    std::getline(head, counts_text);
    if (counts_text.find_first_not_of(" \t\r") == std::string::npos) {
        if (!r.next(line)) throw ParseError("missing counts line", r.number());
        counts_text = line;
    }
    std::istringstream counts(counts_text);
    long nv = -1, nf = -1, ne = 0;
    if (!(counts >> nv >> nf) || nv < 0 || nf < 0) throw ParseError("bad counts line", r.number());
    counts >> ne;

    std::vector<Vec3> v(nv);
    for (long i = 0; i < nv; ++i) {
        if (!r.next(line)) throw ParseError("unexpected end of file in vertex list", r.number());
        std::istringstream ls(line);
        if (!(ls >> v[i][0] >> v[i][1] >> v[i][2])) throw ParseError("bad vertex line", r.number());
    }
    std::vector<Triangle> f(nf);
    for (long i = 0; i < nf; ++i) {
        if (!r.next(line)) throw ParseError("unexpected end of file in face list", r.number());
        std::istringstream ls(line);
        int k = 0;
        if (!(ls >> k)) throw ParseError("bad face line", r.number());
        if (k != 3) throw ParseError("triangles only", r.number());
        if (!(ls >> f[i][0] >> f[i][1] >> f[i][2])) throw ParseError("bad face line", r.number());
        for (int idx : f[i])
            if (idx < 0 || idx >= nv) throw ParseError("face index out of range", r.number());
    }
    return build(std::move(v), std::move(f), r.number());
}

TriMesh read_obj(std::istream& in) {
    LineReader r(in);
    std::string line;
    std::vector<Vec3> v;
    std::vector<Triangle> f;
    std::vector<std::size_t> face_lines;
    while (r.next(line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Vec3 x;
            if (!(ls >> x[0] >> x[1] >> x[2])) throw ParseError("bad vertex line", r.number());
            v.push_back(x);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) {
                // keep the vertex index of v, v/vt, v//vn or v/vt/vn
                const std::string head = tok.substr(0, tok.find('/'));
                try {
                    std::size_t used = 0;
                    const int k = std::stoi(head, &used);
                    if (used != head.size()) throw std::invalid_argument(head);
                    idx.push_back(k);
                } catch (const std::exception&) {
                    throw ParseError("bad face index '" + tok + "'", r.number());
                }
            }
            if (idx.size() != 3) throw ParseError("triangles only", r.number());
            Triangle t;
            for (int k = 0; k < 3; ++k) {
                const int i = idx[k] > 0 ? idx[k] - 1 : static_cast<int>(v.size()) + idx[k];
                if (i < 0 || i >= static_cast<int>(v.size())) throw ParseError("face index out of range", r.number());
                t[k] = i;
            }
            f.push_back(t);
        }
        // other records (vn, vt, o, g, s, usemtl, ...) are ignored
    }
    return build(std::move(v), std::move(f), r.number());
}

}  // namespace

MeshFormat mesh_format_from_path(const std::string& path) {
    const auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == "off") return MeshFormat::off;
    if (ext == "obj") return MeshFormat::obj;
    throw InvalidArgument("unknown mesh format for '" + path + "' (expected .off or .obj)");
}

TriMesh read_mesh(std::istream& in, MeshFormat format) {
    return format == MeshFormat::off ? read_off(in) : read_obj(in);
}

TriMesh read_mesh(const std::string& path, MeshFormat format) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open mesh file '" + path + "'");
    return read_mesh(in, format);
}

TriMesh read_mesh(const std::string& path) { return read_mesh(path, mesh_format_from_path(path)); }

void write_mesh(const TriMesh& mesh, std::ostream& out, MeshFormat format) {
    char buf[96];
    if (format == MeshFormat::off) {
        out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_triangles() << " 0\n";
        for (const Vec3& x : mesh.vertices()) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", x[0], x[1], x[2]);
            out << buf;
        }
        for (const Triangle& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    } else {
        for (const Vec3& x : mesh.vertices()) {
            std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", x[0], x[1], x[2]);
            out << buf;
        }
        for (const Triangle& t : mesh.triangles())
            out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
}

void write_mesh(const TriMesh& mesh, const std::string& path, MeshFormat format) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write mesh file '" + path + "'");
    write_mesh(mesh, out, format);
    if (!out) throw InvalidArgument("error while writing '" + path + "'");
}

void write_mesh(const TriMesh& mesh, const std::string& path) {
    write_mesh(mesh, path, mesh_format_from_path(path));
}

}  // namespace shapecalc
