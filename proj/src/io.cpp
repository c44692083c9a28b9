#include "gksvm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace gksvm {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_number(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError(where + ": cannot parse '" + text + "' as a number");
    }
}

}  // namespace

Dataset parse_csv(std::istream& in, const std::string& source_name) {
    std::string line;
    if (!std::getline(in, line)) throw InputError(source_name + ": empty file");
    const auto header = split_fields(line);
    if (header.empty() || header.front().empty()) throw InputError(source_name + ": missing header");
    const bool labeled = header.back() == "y";
    const std::size_t n_features = header.size() - (labeled ? 1 : 0);
    if (n_features == 0) throw InputError(source_name + ": no feature columns");

    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_fields(line);
        const std::string where = source_name + ":" + std::to_string(line_no);
        if (fields.size() != header.size()) {
            throw InputError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        for (const auto& f : fields) values.push_back(parse_number(f, where));
        ++rows;
    }

    Dataset data;
    const auto n = static_cast<Eigen::Index>(rows);
    const auto cols = static_cast<Eigen::Index>(header.size());
    data.x.resize(n, static_cast<Eigen::Index>(n_features));
    if (labeled) data.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n_features); ++k) {
            data.x(i, k) = values[static_cast<std::size_t>(i * cols + k)];
        }
        if (labeled) data.y[i] = values[static_cast<std::size_t>(i * cols + cols - 1)];
    }
    return data;
}

Dataset read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return parse_csv(in, path.string());
}

void write_csv(const std::filesystem::path& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    for (Eigen::Index k = 0; k < data.x.cols(); ++k) out << (k ? "," : "") << 'x' << (k + 1);
    if (data.labeled()) out << ",y";
    out << '\n';
    for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
        for (Eigen::Index k = 0; k < data.x.cols(); ++k) out << (k ? "," : "") << format_double(data.x(i, k));
        if (data.labeled()) out << ',' << format_double(data.y[i]);
        out << '\n';
    }
    if (!out) throw InputError("write failed for " + path.string());
}

nlohmann::json model_to_json(const FittedModel& model) {
    nlohmann::json points = nlohmann::json::array();
    for (Eigen::Index i = 0; i < model.support_points.rows(); ++i) {
        std::vector<double> row(model.support_points.row(i).begin(), model.support_points.row(i).end());
        points.push_back(row);
    }
    return {
        {"loss", std::string(loss_name(model.loss))},
        {"lambda", model.lambda},
        {"gamma", model.gamma.value()},
        {"clip", model.clip_m},
        {"support_points", std::move(points)},
        {"coefficients", std::vector<double>(model.coefficients.begin(), model.coefficients.end())},
        {"diagnostics",
         {{"converged", model.diagnostics.converged},
          {"iterations", model.diagnostics.iterations},
          {"duality_gap", model.diagnostics.duality_gap},
          {"residual", model.diagnostics.residual},
          {"factorization_fallback", model.diagnostics.factorization_fallback}}},
    };
}

FittedModel model_from_json(const nlohmann::json& j) {
    try {
        FittedModel model;
        model.loss = parse_loss(j.at("loss").get<std::string>());
        model.lambda = j.at("lambda").get<double>();
        model.gamma = Bandwidth(j.at("gamma").get<double>());
        model.clip_m = j.at("clip").get<double>();
        const auto coeffs = j.at("coefficients").get<std::vector<double>>();
        const auto points = j.at("support_points").get<std::vector<std::vector<double>>>();
        if (coeffs.size() != points.size()) throw InputError("model: coefficient/support count mismatch");
        const std::size_t d = points.empty() ? 0 : points.front().size();
        model.support_points.resize(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(d));
        model.coefficients.resize(static_cast<Eigen::Index>(coeffs.size()));
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].size() != d) throw InputError("model: ragged support points");
            for (std::size_t k = 0; k < d; ++k) {
                model.support_points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = points[i][k];
            }
            model.coefficients[static_cast<Eigen::Index>(i)] = coeffs[i];
        }
        if (j.contains("diagnostics")) {
            const auto& diag = j.at("diagnostics");
            model.diagnostics.converged = diag.value("converged", true);
            model.diagnostics.iterations = diag.value("iterations", std::size_t{0});
            model.diagnostics.duality_gap = diag.value("duality_gap", 0.0);
            model.diagnostics.residual = diag.value("residual", 0.0);
            model.diagnostics.factorization_fallback = diag.value("factorization_fallback", false);
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed model JSON: ") + e.what());
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
    if (!out) throw InputError("write failed for " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
    try {
        return nlohmann::json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

}  // namespace gksvm
