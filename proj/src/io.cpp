#include "proflik/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "proflik/errors.hpp"
#include "proflik/format.hpp"

namespace proflik {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_comma(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_double(const std::string& field, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::InvalidInput,
             "line " + std::to_string(line_no) + ": cannot parse number '" + field + "'");
    }
}

// Header plus rectangular numeric rows.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);

    Table t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto fields = split_comma(stripped);
        if (t.header.empty()) {
            t.header = fields;
            continue;
        }
        if (fields.size() != t.header.size())
            fail(ErrorCode::InvalidInput,
                 "line " + std::to_string(line_no) + ": expected " +
                     std::to_string(t.header.size()) + " fields, got " +
                     std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_double(f, line_no));
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) fail(ErrorCode::InvalidInput, "missing header row in " + path);
    if (t.rows.empty()) fail(ErrorCode::InvalidInput, "no data rows in " + path);
    return t;
}

void expect_columns(const Table& t, const std::vector<std::string>& names,
                    const std::string& what) {
    if (t.header != names) {
        std::string want;
        for (const auto& n : names) want += (want.empty() ? "" : ",") + n;
        fail(ErrorCode::InvalidInput, what + " data needs header '" + want + "'");
    }
}

}  // namespace

ScalarSample read_scalar_csv(const std::string& path) {
    const Table t = read_table(path);
    expect_columns(t, {"y"}, "scalar");
    std::vector<double> y;
    y.reserve(t.rows.size());
    for (const auto& row : t.rows) y.push_back(row[0]);
    return ScalarSample(std::move(y));
}

VectorSample read_vector_csv(const std::string& path) {
    const Table t = read_table(path);
    const int d = static_cast<int>(t.header.size());
    std::vector<std::string> want;
    for (int j = 1; j <= d; ++j) want.push_back("y" + std::to_string(j));
    expect_columns(t, want, "vector");
    Eigen::MatrixXd rows(t.rows.size(), d);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (int j = 0; j < d; ++j) rows(i, j) = t.rows[i][j];
    return VectorSample(std::move(rows));
}

RegressionSample read_regression_csv(const std::string& path) {
    const Table t = read_table(path);
    if (t.header.size() < 2)
        fail(ErrorCode::InvalidInput, "regression data needs header 'x1..xq,y'");
    const int q = static_cast<int>(t.header.size()) - 1;
    std::vector<std::string> want;
    for (int j = 1; j <= q; ++j) want.push_back("x" + std::to_string(j));
    want.push_back("y");
    expect_columns(t, want, "regression");
    Eigen::MatrixXd x(t.rows.size(), q);
    Eigen::VectorXd y(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (int j = 0; j < q; ++j) x(i, j) = t.rows[i][j];
        y(i) = t.rows[i][q];
    }
    return RegressionSample(std::move(x), std::move(y));
}

std::string scalar_to_csv(const ScalarSample& sample) {
    std::string out = "y\n";
    for (double v : sample.y) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path);
    out << content;
    if (!out) fail(ErrorCode::InvalidInput, "write failed for " + path);
}

}  // namespace proflik
