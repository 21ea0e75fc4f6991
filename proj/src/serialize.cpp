#include "rfkit/serialize.hpp"

#include <fstream>
#include <json.hpp>

namespace rfkit {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, Index expect_cols = -1) {
    if (!j.is_array()) throw DataError("snapshot: expected a matrix array");
    const Index rows = static_cast<Index>(j.size());
    Index cols = expect_cols;
    if (rows > 0) {
        if (!j[0].is_array()) throw DataError("snapshot: expected row arrays");
        cols = static_cast<Index>(j[0].size());
    }
    if (cols < 0) cols = 0;
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (static_cast<Index>(row.size()) != cols) {
            throw DataError("snapshot: ragged matrix row");
        }
        for (Index c = 0; c < cols; ++c) {
            m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    }
    return m;
}

json vector_to_json(const Vector& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Vector vector_from_json(const json& j) {
    if (!j.is_array()) throw DataError("snapshot: expected a vector array");
    Vector v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
    return v;
}

json kernel_json(const KernelSpec& spec) {
    json j;
    j["family"] = spec.family_name();
    switch (spec.family) {
        case KernelFamily::Linear:
            break;
        case KernelFamily::Polynomial:
            j["a"] = spec.a;
            j["b"] = spec.b;
            j["degree"] = spec.degree;
            break;
        case KernelFamily::RBF:
        case KernelFamily::Laplacian:
            j["sigma"] = spec.sigma;
            break;
        case KernelFamily::StumpL1:
            j["a"] = spec.a;
            j["box_lo"] = vector_to_json(spec.box_lo);
            j["box_hi"] = vector_to_json(spec.box_hi);
            break;
    }
    return j;
}

KernelSpec kernel_from(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "linear") return KernelSpec::linear();
    if (family == "polynomial") {
        return KernelSpec::polynomial(j.at("a").get<double>(), j.at("b").get<double>(),
                                      j.at("degree").get<int>());
    }
    if (family == "rbf") return KernelSpec::rbf(j.at("sigma").get<double>());
    if (family == "laplacian") return KernelSpec::laplacian(j.at("sigma").get<double>());
    if (family == "stump-l1") {
        return KernelSpec::stump_l1(j.at("a").get<double>(),
                                    vector_from_json(j.at("box_lo")),
                                    vector_from_json(j.at("box_hi")));
    }
    throw DataError("snapshot: unknown kernel family '" + family + "'");
}

json feature_map_json(const FittedFeatureMap& map) {
    const auto& spec = map.spec;
    json j;
    j["format"] = "rfkit.feature_map";
    j["version"] = 1;
    j["family"] = spec.family_name();
    j["n_features"] = static_cast<std::int64_t>(spec.n_features);
    j["sigma"] = spec.sigma;
    j["a"] = spec.a;
    j["box_lo"] = vector_to_json(spec.box_lo);
    j["box_hi"] = vector_to_json(spec.box_hi);
    j["seed"] = spec.rng.seed();
    j["stream"] = spec.rng.stream_id();
    j["input_dim"] = static_cast<std::int64_t>(map.input_dim);
    j["out_cols"] = static_cast<std::int64_t>(map.out_cols);
    if (spec.family == FeatureFamily::Binning) {
        json tables = json::array();
        for (const auto& table : map.bin_tables) {
            json entries = json::array();
            for (const auto& [cell, col] : table) {
                entries.push_back(json::array({json(cell), json(static_cast<std::int64_t>(col))}));
            }
            tables.push_back(std::move(entries));
        }
        j["bin_tables"] = std::move(tables);
    }
    return j;
}

FittedFeatureMap feature_map_from(const json& j) {
    if (j.value("format", "") != "rfkit.feature_map") {
        throw DataError("snapshot: not a feature map file");
    }
    FeatureMapSpec spec;
    const std::string family = j.at("family").get<std::string>();
    spec.family = feature_family_from_name(family);
    spec.n_features = j.at("n_features").get<std::int64_t>();
    spec.sigma = j.at("sigma").get<double>();
    spec.a = j.at("a").get<double>();
    spec.box_lo = vector_from_json(j.at("box_lo"));
    spec.box_hi = vector_from_json(j.at("box_hi"));
    spec.rng = RngStream(j.at("seed").get<std::uint64_t>(), j.at("stream").get<std::uint64_t>());

    FittedFeatureMap map = sample_map(spec, j.at("input_dim").get<std::int64_t>());
    if (spec.family == FeatureFamily::Binning) {
        const auto& tables = j.at("bin_tables");
        if (static_cast<Index>(tables.size()) != spec.n_features) {
            throw DataError("snapshot: bin table count mismatch");
        }
        for (std::size_t g = 0; g < tables.size(); ++g) {
            for (const auto& entry : tables[g]) {
                std::vector<std::int64_t> cell =
                    entry.at(0).get<std::vector<std::int64_t>>();
                if (static_cast<Index>(cell.size()) != map.input_dim) {
                    throw DataError("snapshot: bin cell arity mismatch");
                }
                map.bin_tables[g].emplace(std::move(cell),
                                          static_cast<Index>(entry.at(1).get<std::int64_t>()));
            }
        }
        map.out_cols = j.at("out_cols").get<std::int64_t>();
    } else if (j.at("out_cols").get<std::int64_t>() != map.out_cols) {
        throw DataError("snapshot: output width mismatch");
    }
    return map;
}

json standardizer_json(const Standardizer& s) {
    json j;
    j["input_means"] = vector_to_json(s.input_means);
    j["input_scales"] = vector_to_json(s.input_scales);
    j["target_means"] = vector_to_json(s.target_means);
    return j;
}

Standardizer standardizer_from(const json& j) {
    Standardizer s;
    s.input_means = vector_from_json(j.at("input_means"));
    s.input_scales = vector_from_json(j.at("input_scales"));
    s.target_means = vector_from_json(j.at("target_means"));
    return s;
}

json model_json(const FitModel& m) {
    json j;
    j["format"] = "rfkit.model";
    j["version"] = 1;
    j["task"] = m.task == Task::Regression ? "regression" : "classification";
    j["kind"] = m.kind == FitModel::Kind::Primal ? "primal" : "dual";
    j["lambda"] = m.lambda;
    j["standardizer"] = standardizer_json(m.standardizer);
    if (m.kind == FitModel::Kind::Primal) {
        j["weights"] = matrix_to_json(m.weights);
        j["feature_map"] = m.feature_map ? feature_map_json(*m.feature_map) : json();
    } else {
        j["dual_weights"] = matrix_to_json(m.dual_weights);
        j["train_inputs"] = matrix_to_json(m.train_inputs);
        j["kernel"] = kernel_json(*m.kernel);
    }
    return j;
}

FitModel model_from(const json& j) {
    if (j.value("format", "") != "rfkit.model") {
        throw DataError("snapshot: not a model file");
    }
    FitModel m;
    m.task = j.at("task").get<std::string>() == "classification"
                 ? Task::BinaryClassification
                 : Task::Regression;
    m.kind = j.at("kind").get<std::string>() == "dual" ? FitModel::Kind::Dual
                                                       : FitModel::Kind::Primal;
    m.lambda = j.at("lambda").get<double>();
    m.standardizer = standardizer_from(j.at("standardizer"));
    if (m.kind == FitModel::Kind::Primal) {
        m.weights = matrix_from_json(j.at("weights"));
        if (!j.at("feature_map").is_null()) {
            m.feature_map = feature_map_from(j.at("feature_map"));
        }
    } else {
        m.dual_weights = matrix_from_json(j.at("dual_weights"));
        m.train_inputs = matrix_from_json(j.at("train_inputs"));
        m.kernel = kernel_from(j.at("kernel"));
    }
    return m;
}

json parse(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DataError(std::string(what) + ": invalid JSON");
    return j;
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << j.dump() << '\n';
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw DataError("'" + path + "': invalid JSON");
    return j;
}

}  // namespace

std::string kernel_to_json(const KernelSpec& spec) { return kernel_json(spec).dump(); }

KernelSpec kernel_from_json(const std::string& text) {
    return kernel_from(parse(text, "kernel"));
}

std::string feature_map_to_json(const FittedFeatureMap& map) {
    return feature_map_json(map).dump();
}

FittedFeatureMap feature_map_from_json(const std::string& text) {
    return feature_map_from(parse(text, "feature map"));
}

std::string model_to_json(const FitModel& model) { return model_json(model).dump(); }

FitModel model_from_json(const std::string& text) {
    return model_from(parse(text, "model"));
}

void save_feature_map(const FittedFeatureMap& map, const std::string& path) {
    write_file(path, feature_map_json(map));
}

FittedFeatureMap load_feature_map(const std::string& path) {
    return feature_map_from(read_file(path));
}

void save_model(const FitModel& model, const std::string& path) {
    write_file(path, model_json(model));
}

FitModel load_model(const std::string& path) {
    return model_from(read_file(path));
}

}  // namespace rfkit
