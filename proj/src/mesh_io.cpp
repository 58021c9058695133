// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/mesh_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace nudf {

namespace {

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    return ext;
}

[[noreturn]] void fail_format(const std::string& path, std::streamoff offset, const std::string& what) {
    std::ostringstream msg;
    msg << path << ": format error at byte offset " << offset << ": " << what;
    throw FormatError(msg.str());
}

// ---------------------------------------------------------------------------
// PLY

enum class PlyType { Float32, Float64, Int8, Uint8, Int16, Uint16, Int32, Uint32 };

std::size_t ply_type_size(PlyType t) {
    switch (t) {
        case PlyType::Float32: return 4;
        case PlyType::Float64: return 8;
        case PlyType::Int8:
        case PlyType::Uint8: return 1;
        case PlyType::Int16:
        case PlyType::Uint16: return 2;
        case PlyType::Int32:
        case PlyType::Uint32: return 4;
    }
    return 0;
}

PlyType parse_ply_type(const std::string& s, const std::string& path, std::streamoff off) {
    if (s == "float" || s == "float32") return PlyType::Float32;
    if (s == "double" || s == "float64") return PlyType::Float64;
    if (s == "char" || s == "int8") return PlyType::Int8;
    if (s == "uchar" || s == "uint8") return PlyType::Uint8;
    if (s == "short" || s == "int16") return PlyType::Int16;
    if (s == "ushort" || s == "uint16") return PlyType::Uint16;
    if (s == "int" || s == "int32") return PlyType::Int32;
    if (s == "uint" || s == "uint32") return PlyType::Uint32;
    fail_format(path, off, "unknown ply type '" + s + "'");
}

struct PlyProperty {
    std::string name;
    PlyType type = PlyType::Float32;
    bool is_list = false;
    PlyType count_type = PlyType::Uint8;
};

struct PlyElement {
    std::string name;
    std::size_t count = 0;
    std::vector<PlyProperty> properties;
};

struct PlyHeader {
    bool binary = false;
    std::vector<PlyElement> elements;
    std::streamoff data_offset = 0;
};

PlyHeader read_ply_header(std::istream& in, const std::string& path) {
    PlyHeader header;
    std::string line;
    auto offset = [&]() -> std::streamoff { return in.tellg(); };

    if (!std::getline(in, line)) fail_format(path, 0, "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "ply") fail_format(path, 0, "missing 'ply' magic");

    bool have_format = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string token;
        ls >> token;
        if (token == "comment" || token.empty()) continue;
        if (token == "format") {
            std::string fmt, version;
            ls >> fmt >> version;
            if (fmt == "ascii") {
                header.binary = false;
            } else if (fmt == "binary_little_endian") {
                header.binary = true;
            } else {
                fail_format(path, offset(), "unsupported ply format '" + fmt + "'");
            }
            have_format = true;
        } else if (token == "element") {
            PlyElement el;
            ls >> el.name >> el.count;
            header.elements.push_back(el);
        } else if (token == "property") {
            if (header.elements.empty()) fail_format(path, offset(), "property before element");
            PlyProperty prop;
            std::string type;
            ls >> type;
            if (type == "list") {
                std::string count_type, value_type;
                ls >> count_type >> value_type >> prop.name;
                prop.is_list = true;
                prop.count_type = parse_ply_type(count_type, path, offset());
                prop.type = parse_ply_type(value_type, path, offset());
            } else {
                ls >> prop.name;
                prop.type = parse_ply_type(type, path, offset());
            }
            header.elements.back().properties.push_back(prop);
        } else if (token == "end_header") {
            if (!have_format) fail_format(path, offset(), "missing format line");
            header.data_offset = in.tellg();
            return header;
        } else {
            fail_format(path, offset(), "unexpected header token '" + token + "'");
        }
    }
    fail_format(path, offset(), "missing end_header");
}

double read_binary_scalar(std::istream& in, PlyType t, const std::string& path) {
    std::array<unsigned char, 8> buf{};
    in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(ply_type_size(t)));
    if (!in) fail_format(path, in.tellg(), "truncated binary data");
    switch (t) {
        case PlyType::Float32: {
            float v;
            std::memcpy(&v, buf.data(), 4);
            return double(v);
        }
        case PlyType::Float64: {
            double v;
            std::memcpy(&v, buf.data(), 8);
            return v;
        }
        case PlyType::Int8: return double(*reinterpret_cast<const std::int8_t*>(buf.data()));
        case PlyType::Uint8: return double(buf[0]);
        case PlyType::Int16: {
            std::int16_t v;
            std::memcpy(&v, buf.data(), 2);
            return double(v);
        }
        case PlyType::Uint16: {
            std::uint16_t v;
            std::memcpy(&v, buf.data(), 2);
            return double(v);
        }
        case PlyType::Int32: {
            std::int32_t v;
            std::memcpy(&v, buf.data(), 4);
            return double(v);
        }
        case PlyType::Uint32: {
            std::uint32_t v;
            std::memcpy(&v, buf.data(), 4);
            return double(v);
        }
    }
    return 0;
}

double read_ascii_scalar(std::istream& in, const std::string& path) {
    double v;
    if (!(in >> v)) fail_format(path, in.tellg(), "truncated ascii data");
    return v;
}

struct PlyContents {
    std::vector<Vec3> positions;
    std::vector<Vec3> normals;
    std::vector<double> scalars;
    std::string scalar_name;
    std::vector<Vec3i> faces;
};

PlyContents read_ply(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open file");
    PlyHeader header = read_ply_header(in, path);

    PlyContents out;
    for (const auto& el : header.elements) {
        if (el.name == "vertex") {
            int ix = -1, iy = -1, iz = -1, inx = -1, iny = -1, inz = -1, iscalar = -1;
            for (int p = 0; p < int(el.properties.size()); ++p) {
                const auto& prop = el.properties[std::size_t(p)];
                if (prop.is_list) fail_format(path, header.data_offset, "list property on vertex element");
                if (prop.name == "x") ix = p;
                else if (prop.name == "y") iy = p;
                else if (prop.name == "z") iz = p;
                else if (prop.name == "nx") inx = p;
                else if (prop.name == "ny") iny = p;
                else if (prop.name == "nz") inz = p;
                else if (iscalar < 0) {
                    iscalar = p;
                    out.scalar_name = prop.name;
                }
            }
            if (ix < 0 || iy < 0 || iz < 0) fail_format(path, header.data_offset, "vertex element lacks x/y/z");
            const bool has_normals = inx >= 0 && iny >= 0 && inz >= 0;
            out.positions.reserve(el.count);
            std::vector<double> row(el.properties.size());
            for (std::size_t v = 0; v < el.count; ++v) {
                for (std::size_t p = 0; p < el.properties.size(); ++p) {
                    row[p] = header.binary ? read_binary_scalar(in, el.properties[p].type, path)
                                           : read_ascii_scalar(in, path);
                }
                out.positions.emplace_back(row[std::size_t(ix)], row[std::size_t(iy)], row[std::size_t(iz)]);
                if (has_normals)
                    out.normals.emplace_back(row[std::size_t(inx)], row[std::size_t(iny)], row[std::size_t(inz)]);
                if (iscalar >= 0) out.scalars.push_back(row[std::size_t(iscalar)]);
            }
        } else if (el.name == "face") {
            if (el.properties.size() != 1 || !el.properties[0].is_list)
                fail_format(path, header.data_offset, "face element must be a single index list");
            const auto& prop = el.properties[0];
            out.faces.reserve(el.count);
            for (std::size_t f = 0; f < el.count; ++f) {
                const std::streamoff before = in.tellg();
                const std::size_t n = std::size_t(header.binary ? read_binary_scalar(in, prop.count_type, path)
                                                                : read_ascii_scalar(in, path));
                if (n < 3) fail_format(path, before, "face with fewer than 3 indices");
                std::vector<int> idx(n);
                for (std::size_t k = 0; k < n; ++k) {
                    idx[k] = int(header.binary ? read_binary_scalar(in, prop.type, path)
                                               : read_ascii_scalar(in, path));
                }
                for (std::size_t k = 2; k < n; ++k) out.faces.emplace_back(idx[0], idx[k - 1], idx[k]);
            }
        } else {
            // Unknown element: skippable only when sizes are fixed.
            for (const auto& prop : el.properties) {
                if (prop.is_list) fail_format(path, header.data_offset, "cannot skip list element '" + el.name + "'");
            }
            std::size_t row_size = 0;
            for (const auto& prop : el.properties) row_size += ply_type_size(prop.type);
            if (header.binary) {
                in.seekg(std::streamoff(el.count * row_size), std::ios::cur);
            } else {
                double dummy;
                for (std::size_t i = 0; i < el.count * el.properties.size(); ++i) in >> dummy;
            }
        }
    }
    return out;
}

void write_ply(const std::string& path, const std::vector<Vec3>& positions, const std::vector<Vec3>& normals,
               const std::vector<double>& scalars, const std::string& scalar_name, const std::vector<Vec3i>& faces,
               bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out.precision(9);  // round-trips float32 exactly

    out << "ply\nformat " << (binary ? "binary_little_endian" : "ascii") << " 1.0\n";
    out << "element vertex " << positions.size() << "\n";
    out << "property float x\nproperty float y\nproperty float z\n";
    if (!normals.empty()) out << "property float nx\nproperty float ny\nproperty float nz\n";
    if (!scalars.empty()) out << "property float " << scalar_name << "\n";
    if (!faces.empty()) {
        out << "element face " << faces.size() << "\n";
        out << "property list uchar int vertex_indices\n";
    }
    out << "end_header\n";

    auto put_f32 = [&](double v) {
        const float f = float(v);
        out.write(reinterpret_cast<const char*>(&f), 4);
    };

    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (binary) {
            put_f32(positions[i].x());
            put_f32(positions[i].y());
            put_f32(positions[i].z());
            if (!normals.empty()) {
                put_f32(normals[i].x());
                put_f32(normals[i].y());
                put_f32(normals[i].z());
            }
            if (!scalars.empty()) put_f32(scalars[i]);
        } else {
            out << float(positions[i].x()) << " " << float(positions[i].y()) << " " << float(positions[i].z());
            if (!normals.empty())
                out << " " << float(normals[i].x()) << " " << float(normals[i].y()) << " " << float(normals[i].z());
            if (!scalars.empty()) out << " " << float(scalars[i]);
            out << "\n";
        }
    }
    for (const auto& f : faces) {
        if (binary) {
            const unsigned char n = 3;
            out.write(reinterpret_cast<const char*>(&n), 1);
            const std::int32_t idx[3] = {f[0], f[1], f[2]};
            out.write(reinterpret_cast<const char*>(idx), 12);
        } else {
            out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
        }
    }
    if (!out) throw IoError(path + ": write failed");
}

// ---------------------------------------------------------------------------
// OBJ (v/vn/f records only)

TriangleMesh read_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open file");

    TriangleMesh mesh;
    std::string line;
    std::streamoff line_start = 0;
    while (in.tellg(), std::getline(in, line)) {
        const std::streamoff offset = line_start;
        line_start = in.tellg();
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string token;
        ls >> token;
        if (token == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) fail_format(path, offset, "malformed vertex record");
            mesh.vertices.emplace_back(x, y, z);
        } else if (token == "vn" || token == "vt" || token == "g" || token == "o" || token == "s" ||
                   token == "usemtl" || token == "mtllib") {
            continue;
        } else if (token == "f") {
            std::vector<int> idx;
            std::string corner;
            while (ls >> corner) {
                // "i", "i/j", "i//k", "i/j/k"; only the vertex index matters here.
                const auto slash = corner.find('/');
                const std::string head = slash == std::string::npos ? corner : corner.substr(0, slash);
                int v = 0;
                const auto res = std::from_chars(head.data(), head.data() + head.size(), v);
                if (res.ec != std::errc() || v == 0) fail_format(path, offset, "malformed face index '" + corner + "'");
                if (v < 0) v = int(mesh.vertices.size()) + v + 1;
                idx.push_back(v - 1);
            }
            if (idx.size() < 3) fail_format(path, offset, "face with fewer than 3 vertices");
            for (std::size_t k = 2; k < idx.size(); ++k)
                mesh.triangles.emplace_back(idx[0], idx[k - 1], idx[k]);
        } else {
            fail_format(path, offset, "unsupported obj record '" + token + "'");
        }
    }
    return mesh;
}

void write_obj(const TriangleMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out.precision(9);  // round-trips float32 exactly
    for (const auto& v : mesh.vertices)
        out << "v " << float(v.x()) << " " << float(v.y()) << " " << float(v.z()) << "\n";
    for (const auto& t : mesh.triangles)
        out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
    if (!out) throw IoError(path + ": write failed");
}

void validate_indices(const TriangleMesh& mesh, const std::string& path) {
    const int nv = int(mesh.vertices.size());
    for (const auto& t : mesh.triangles) {
        for (int c = 0; c < 3; ++c) {
            if (t[c] < 0 || t[c] >= nv)
                throw FormatError(path + ": triangle index " + std::to_string(t[c]) + " out of range (vertex count " +
                                  std::to_string(nv) + ")");
        }
    }
}

}  // namespace

TriangleMesh load_mesh(const std::string& path, LoadReport* report) {
    const std::string ext = lower_ext(path);
    TriangleMesh mesh;
    if (ext == "ply") {
        PlyContents contents = read_ply(path);
        mesh.vertices = std::move(contents.positions);
        mesh.triangles = std::move(contents.faces);
    } else if (ext == "obj") {
        mesh = read_obj(path);
    } else {
        throw InputError(path + ": unsupported mesh extension '" + ext + "' (expected ply or obj)");
    }
    validate_indices(mesh, path);
    if (mesh.triangles.empty()) throw InputError(path + ": empty input (mesh has no triangles)");
    const CleanupStats stats = cleanup_mesh(mesh);
    if (mesh.triangles.empty()) throw InputError(path + ": empty input (all triangles degenerate)");
    if (report) report->cleanup = stats;
    return mesh;
}

void save_mesh(const TriangleMesh& mesh, const std::string& path, MeshFormat format) {
    if (path.empty()) throw InputError("save_mesh: empty path");
    switch (format) {
        case MeshFormat::PlyAscii:
            write_ply(path, mesh.vertices, {}, {}, "", mesh.triangles, false);
            break;
        case MeshFormat::PlyBinary:
            write_ply(path, mesh.vertices, {}, {}, "", mesh.triangles, true);
            break;
        case MeshFormat::Obj:
            write_obj(mesh, path);
            break;
    }
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "obj") {
        save_mesh(mesh, path, MeshFormat::Obj);
    } else if (ext == "ply") {
        save_mesh(mesh, path, MeshFormat::PlyBinary);
    } else {
        throw InputError(path + ": unsupported mesh extension '" + ext + "'");
    }
}

void save_point_cloud(const PointCloud& cloud, const std::string& path, bool binary) {
    if (path.empty()) throw InputError("save_point_cloud: empty path");
    write_ply(path, cloud.points, cloud.normals, cloud.scalars, cloud.scalar_name, {}, binary);
}

PointCloud load_point_cloud(const std::string& path) {
    PlyContents contents = read_ply(path);
    PointCloud cloud;
    cloud.points = std::move(contents.positions);
    cloud.normals = std::move(contents.normals);
    cloud.scalars = std::move(contents.scalars);
    if (!contents.scalar_name.empty()) cloud.scalar_name = contents.scalar_name;
    return cloud;
}

}  // namespace nudf
