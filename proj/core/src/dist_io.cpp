#include "corrlab/dist_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace corrlab {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << text;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Alphabet labels_or_iota(const json& obj, const char* key, int n) {
    if (!obj.contains(key)) return Alphabet::iota(n);
    const json& arr = obj.at(key);
    if (!arr.is_array()) throw ParseError(std::string(key) + " must be an array of reals");
    Alphabet a;
    for (const auto& v : arr) {
        if (!v.is_number()) throw ParseError(std::string(key) + " must contain numbers only");
        a.labels.push_back(v.get<double>());
    }
    return a;
}

Eigen::MatrixXd parse_matrix(const json& rows, const char* what) {
    if (!rows.is_array() || rows.empty() || !rows[0].is_array())
        throw ParseError(std::string(what) + " must be an array of rows");
    const size_t nr = rows.size();
    const size_t nc = rows[0].size();
    Eigen::MatrixXd m(static_cast<int>(nr), static_cast<int>(nc));
    for (size_t i = 0; i < nr; ++i) {
        if (!rows[i].is_array() || rows[i].size() != nc)
            throw ParseError(std::string(what) + " has ragged rows");
        for (size_t j = 0; j < nc; ++j) {
            if (!rows[i][j].is_number())
                throw ParseError(std::string(what) + " must contain numbers only");
            m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j].get<double>();
        }
    }
    return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

AnyDist parse_dist(const std::string& text) {
    const json obj = parse_json(text);
    if (!obj.is_object() || !obj.contains("pmf"))
        throw ParseError("distribution object must carry a pmf field");
    const json& pmf = obj.at("pmf");
    if (!pmf.is_array() || pmf.empty() || !pmf[0].is_array())
        throw ParseError("pmf must be an array of rows or of matrices");

    const bool is_tensor = !pmf[0].empty() && pmf[0][0].is_array();
    if (!is_tensor) {
        JointDist2 d;
        d.pmf = parse_matrix(pmf, "pmf");
        d.x = labels_or_iota(obj, "labels_x", d.nx());
        d.y = labels_or_iota(obj, "labels_y", d.ny());
        validate(d);
        return normalized(std::move(d));
    }
    JointDist3 d;
    for (const auto& slice : pmf) d.pmf.push_back(parse_matrix(slice, "pmf slice"));
    d.x = labels_or_iota(obj, "labels_x", d.nx());
    d.y = labels_or_iota(obj, "labels_y", d.ny());
    d.u = labels_or_iota(obj, "labels_u", d.nu());
    validate(d);
    return normalized(std::move(d));
}

AnyDist read_dist(const std::string& path) { return parse_dist(slurp(path)); }

JointDist2 read_dist2(const std::string& path) {
    AnyDist any = read_dist(path);
    if (!std::holds_alternative<JointDist2>(any))
        throw ShapeMismatch("expected a 2-dimensional distribution in " + path);
    return std::get<JointDist2>(std::move(any));
}

Channel parse_channel(const std::string& text) {
    const json obj = parse_json(text);
    if (!obj.is_object() || !obj.contains("kernel"))
        throw ParseError("channel object must carry a kernel field");
    const json& k = obj.at("kernel");
    if (!k.is_array() || k.empty() || !k[0].is_array() || k[0].empty() || !k[0][0].is_array())
        throw ParseError("kernel must be indexed [x][y][w]");
    Channel ch;
    ch.in_x = static_cast<int>(k.size());
    ch.in_y = static_cast<int>(k[0].size());
    ch.out_w = static_cast<int>(k[0][0].size());
    ch.kernel.resize(ch.in_x * ch.in_y, ch.out_w);
    for (int x = 0; x < ch.in_x; ++x) {
        if (static_cast<int>(k[static_cast<size_t>(x)].size()) != ch.in_y)
            throw ParseError("kernel has ragged y dimension");
        for (int y = 0; y < ch.in_y; ++y) {
            const json& row = k[static_cast<size_t>(x)][static_cast<size_t>(y)];
            if (!row.is_array() || static_cast<int>(row.size()) != ch.out_w)
                throw ParseError("kernel has ragged w dimension");
            for (int w = 0; w < ch.out_w; ++w) {
                if (!row[static_cast<size_t>(w)].is_number())
                    throw ParseError("kernel must contain numbers only");
                ch.kernel(ch.cell(x, y), w) = row[static_cast<size_t>(w)].get<double>();
            }
        }
    }
    validate(ch);
    return ch;
}

Channel read_channel(const std::string& path) { return parse_channel(slurp(path)); }

std::string to_json(const JointDist2& d) {
    json obj;
    obj["labels_x"] = d.x.labels;
    obj["labels_y"] = d.y.labels;
    obj["pmf"] = matrix_to_json(d.pmf);
    return obj.dump(2) + "\n";
}

std::string to_json(const JointDist3& d) {
    json obj;
    obj["labels_x"] = d.x.labels;
    obj["labels_y"] = d.y.labels;
    obj["labels_u"] = d.u.labels;
    json slices = json::array();
    for (const auto& slice : d.pmf) slices.push_back(matrix_to_json(slice));
    obj["pmf"] = slices;
    return obj.dump(2) + "\n";
}

std::string to_json(const Channel& ch) {
    json kernel = json::array();
    for (int x = 0; x < ch.in_x; ++x) {
        json per_y = json::array();
        for (int y = 0; y < ch.in_y; ++y) {
            json per_w = json::array();
            for (int w = 0; w < ch.out_w; ++w) per_w.push_back(ch.kernel(ch.cell(x, y), w));
            per_y.push_back(per_w);
        }
        kernel.push_back(per_y);
    }
    json obj;
    obj["kernel"] = kernel;
    return obj.dump(2) + "\n";
}

void write_dist(const JointDist2& d, const std::string& path) { spit(path, to_json(d)); }
void write_dist(const JointDist3& d, const std::string& path) { spit(path, to_json(d)); }
void write_channel(const Channel& ch, const std::string& path) { spit(path, to_json(ch)); }

} // namespace corrlab
