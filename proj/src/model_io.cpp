#include "nilgeo/model_io.hpp"

#include "nilgeo/error.hpp"

#include <fstream>
#include <sstream>

namespace nilgeo {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Nonzero entries as [row, col, "p/q"].
ordered_json sparse_matrix(const QMatrix& m) {
    ordered_json out = ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c) != 0) out.push_back(ordered_json::array({r, c, to_string(m(r, c))}));
        }
    }
    return out;
}

ordered_json sparse_matrices(const std::vector<QMatrix>& ms) {
    ordered_json out = ordered_json::array();
    for (const auto& m : ms) out.push_back(sparse_matrix(m));
    return out;
}

ordered_json int_array(const IVec& v) {
    ordered_json out = ordered_json::array();
    for (auto x : v) out.push_back(x);
    return out;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidInput, "model file: " + what);
}

const json& field(const json& j, const char* key) {
    require(j.is_object() && j.contains(key), std::string("missing field '") + key + "'");
    return j.at(key);
}

bool same_sparse(const json& stored, const QMatrix& m) {
    if (!stored.is_array()) return false;
    QMatrix read(m.rows(), m.cols());
    for (const auto& e : stored) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned() || !e[2].is_string()) return false;
        const auto r = e[0].get<std::size_t>(), c = e[1].get<std::size_t>();
        if (r >= m.rows() || c >= m.cols()) return false;
        read(r, c) = parse_rational(e[2].get<std::string>());
    }
    return read == m;
}

bool same_sparse_list(const json& stored, const std::vector<QMatrix>& ms) {
    if (!stored.is_array() || stored.size() != ms.size()) return false;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (!same_sparse(stored[i], ms[i])) return false;
    }
    return true;
}

}  // namespace

ordered_json rational_vector_json(const QVec& v) {
    ordered_json out = ordered_json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

QVec rational_vector_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected an array of \"p/q\" strings");
    QVec out;
    for (const auto& e : j) {
        if (!e.is_string()) throw Error(ErrorCode::InvalidInput, "expected an array of \"p/q\" strings");
        out.push_back(parse_rational(e.get<std::string>()));
    }
    return out;
}

ordered_json model_to_json(const ModelFile& m) {
    const MetricNilLie& n = m.model;
    ordered_json blocks = ordered_json::array();
    for (const auto& b : n.u.blocks) {
        ordered_json indices = ordered_json::array();
        for (auto i : b.indices) indices.push_back(i);
        blocks.push_back({{"weight", int_array(b.weight.to_ints())}, {"labels", int_array(b.labels)}, {"indices", indices}});
    }
    ordered_json out;
    out["format"] = model_format;
    out["version"] = model_version;
    out["type"] = m.type.name();
    out["lambda"] = int_array(m.lam.to_ints());
    out["real_case"] = n.u.real_case == RealCase::Real ? "real" : "realified";
    out["u_dim"] = n.u_dim();
    out["z_dim"] = n.z_dim();
    out["blocks"] = blocks;
    out["gram"] = rational_vector_json(n.u.gram);
    out["g0_inner"] = sparse_matrix(n.g0_inner);
    out["action"] = sparse_matrices(n.u.action);
    out["bracket"] = sparse_matrices(n.bracket);
    out["lattice"] = {{"scale", to_string(m.lattice_scale)}};
    if (m.xi) {
        out["xi"] = {{"x", rational_vector_json(m.xi->x)}, {"alpha", to_string(m.xi->alpha)}, {"z", rational_vector_json(m.xi->z)}};
    }
    return out;
}

ModelFile model_from_json(const json& j) {
    require(field(j, "format") == model_format, "unknown format");
    require(field(j, "version") == model_version, "unsupported version");
    const auto& type = field(j, "type");
    require(type.is_string(), "'type' must be a string such as \"A2\"");
    const auto& lambda = field(j, "lambda");
    require(lambda.is_array(), "'lambda' must be an integer array");
    IVec lam;
    for (const auto& e : lambda) {
        require(e.is_number_integer(), "'lambda' must be an integer array");
        lam.push_back(e.get<std::int64_t>());
    }
    ModelFile m{SimpleType::parse(type.get<std::string>()), WeightVec::from_ints(lam), {}, 1, std::nullopt};
    const RootSystem rs = RootSystem::build(m.type);
    require(lam.size() == static_cast<std::size_t>(rs.rank()), "'lambda' length differs from the rank");
    m.model = build_model(rs, m.lam);
    const MetricNilLie& n = m.model;

    require(field(j, "u_dim") == n.u_dim() && field(j, "z_dim") == n.z_dim(), "dimensions differ from the rebuilt model");
    require(rational_vector_from_json(field(j, "gram")) == n.u.gram, "'gram' differs from the rebuilt model");
    require(same_sparse(field(j, "g0_inner"), n.g0_inner), "'g0_inner' differs from the rebuilt model");
    require(same_sparse_list(field(j, "action"), n.u.action), "'action' differs from the rebuilt model");
    require(same_sparse_list(field(j, "bracket"), n.bracket), "'bracket' differs from the rebuilt model");

    if (j.contains("lattice")) {
        const auto& scale = field(j.at("lattice"), "scale");
        require(scale.is_string(), "'lattice.scale' must be \"p/q\"");
        m.lattice_scale = parse_rational(scale.get<std::string>());
        require(m.lattice_scale > 0, "'lattice.scale' must be positive");
    }
    if (j.contains("xi")) {
        const auto& xi = j.at("xi");
        GeodesicInit init{rational_vector_from_json(field(xi, "x")), 1, rational_vector_from_json(field(xi, "z"))};
        const auto& alpha = field(xi, "alpha");
        require(alpha.is_string(), "'xi.alpha' must be \"p/q\"");
        init.alpha = parse_rational(alpha.get<std::string>());
        require(init.x.size() == n.u_dim(), "'xi.x' has the wrong length");
        require(init.z.size() == n.z_dim(), "'xi.z' has the wrong length");
        m.xi = std::move(init);
    }
    return m;
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open model file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, "model file '" + path + "' is not valid JSON: " + e.what());
    }
    return model_from_json(j);
}

void save_model(const ModelFile& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write model file '" + path + "'");
    out << model_to_json(m).dump(2) << '\n';
}

std::optional<GeodesicInit> default_init(const MetricNilLie& n) {
    const std::size_t r = n.g0.rank;
    GeodesicInit xi{QVec(n.u_dim()), 1, QVec(n.z_dim())};
    for (std::size_t i = 0; i < n.u_dim(); ++i) xi.x[i] = frac(static_cast<std::int64_t>(i * 7 % 5) + 1, 3);
    // graded order on label tuples: smaller sum first, then lexicographic
    for (std::int64_t total = static_cast<std::int64_t>(r); total <= 5 * static_cast<std::int64_t>(r); ++total) {
        IVec labels(r, 1);
        while (true) {
            std::int64_t sum = 0;
            for (auto l : labels) sum += l;
            if (sum == total) {
                for (std::size_t k = 0; k < r; ++k) xi.z[k] = labels[k];
                if (is_super_regular(n, xi.z)) return xi;
            }
            std::size_t k = r;
            while (k > 0 && labels[k - 1] == 5) labels[--k] = 1;
            if (k == 0) break;
            ++labels[k - 1];
        }
    }
    return std::nullopt;
}

}  // namespace nilgeo
