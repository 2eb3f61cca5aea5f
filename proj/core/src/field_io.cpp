#include "hitchin_glue/field_io.hpp"

#include "hitchin_glue/errors.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace hg {

namespace {

Location location_from_name(const std::string& s) {
    if (s == "nodes") return Location::nodes;
    if (s == "edges") return Location::edges;
    throw InvalidArgument("unknown field location '" + s + "'");
}

}  // namespace

nlohmann::json field_to_json(const Field2D& f) {
    nlohmann::json j;
    j["n_tau"] = f.grid.n_tau;
    j["n_theta_modes"] = f.grid.N;
    j["component_tag"] = tag_name(f.tag);
    j["location"] = f.loc == Location::nodes ? "nodes" : "edges";
    j["tau_min"] = f.grid.tau_min;
    j["tau_max"] = f.grid.tau_max;
    nlohmann::json data = nlohmann::json::array();
    for (const Mat2& m : f.coef)
        for (int k = 0; k < 4; ++k) {
            cd z = m(k / 2, k % 2);
            data.push_back(z.real());
            data.push_back(z.imag());
        }
    j["data"] = std::move(data);
    return j;
}

Field2D field_from_json(const nlohmann::json& j) {
    NeckGrid g(j.at("tau_min").get<double>(), j.at("tau_max").get<double>(), j.at("n_tau").get<int>(),
               j.at("n_theta_modes").get<int>());
    Field2D f(g, tag_from_name(j.at("component_tag").get<std::string>()),
              location_from_name(j.value("location", std::string("nodes"))));
    const auto& data = j.at("data");
    if (data.size() != f.coef.size() * 8) throw InvalidArgument("field JSON: data length does not match header");
    for (std::size_t p = 0; p < f.coef.size(); ++p)
        for (int k = 0; k < 4; ++k)
            f.coef[p](k / 2, k % 2) = cd(data[p * 8 + 2 * k].get<double>(), data[p * 8 + 2 * k + 1].get<double>());
    return f;
}

void write_field_json(const Field2D& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw InvalidArgument("cannot open '" + path + "' for writing");
    os << field_to_json(f).dump() << '\n';
    if (!os) throw InvalidArgument("write to '" + path + "' failed");
}

Field2D read_field_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InvalidArgument("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
    }
    return field_from_json(j);
}

void write_field_binary(const Field2D& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidArgument("cannot open '" + path + "' for writing");
    os.write("HGF1", 4);
    std::int32_t hdr[4] = {f.grid.n_tau, f.grid.N, std::int32_t(f.tag), f.loc == Location::nodes ? 0 : 1};
    os.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
    double span[2] = {f.grid.tau_min, f.grid.tau_max};
    os.write(reinterpret_cast<const char*>(span), sizeof span);
    for (const Mat2& m : f.coef)
        for (int k = 0; k < 4; ++k) {
            double v[2] = {m(k / 2, k % 2).real(), m(k / 2, k % 2).imag()};
            os.write(reinterpret_cast<const char*>(v), sizeof v);
        }
    if (!os) throw InvalidArgument("write to '" + path + "' failed");
}

Field2D read_field_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidArgument("cannot open '" + path + "'");
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "HGF1", 4) != 0) throw InvalidArgument("'" + path + "' is not a field file");
    std::int32_t hdr[4];
    double span[2];
    is.read(reinterpret_cast<char*>(hdr), sizeof hdr);
    is.read(reinterpret_cast<char*>(span), sizeof span);
    if (!is || hdr[2] < 0 || hdr[2] > int(Tag::scalar_function)) throw InvalidArgument("corrupt field header");
    Field2D f(NeckGrid(span[0], span[1], hdr[0], hdr[1]), Tag(hdr[2]), hdr[3] == 0 ? Location::nodes : Location::edges);
    for (Mat2& m : f.coef)
        for (int k = 0; k < 4; ++k) {
            double v[2];
            is.read(reinterpret_cast<char*>(v), sizeof v);
            m(k / 2, k % 2) = cd(v[0], v[1]);
        }
    if (!is) throw InvalidArgument("'" + path + "' is truncated");
    return f;
}

}  // namespace hg
