#include "cgsp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cgsp {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw_error(ErrorCode::IoError, "cannot write '" + path + "'");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_error(ErrorCode::IoError, "cannot read '" + path + "'");
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= line.size()) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    for (auto& cell : out) {
        while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.erase(0, 1);
        while (!cell.empty() &&
               (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) {
            cell.pop_back();
        }
    }
    return out;
}

double parse_cell(const std::string& cell, const std::string& path, int line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::logic_error&) {
        throw_error(ErrorCode::MalformedCsv,
                    path + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
    }
}

}  // namespace

void write_signal_csv(const std::string& path, const ComplexVector& f) {
    auto out = open_out(path);
    out << "index,re,im\n";
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        out << i << ',' << format_double(f(i).real()) << ',' << format_double(f(i).imag())
            << '\n';
    }
}

ComplexVector read_signal_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    std::vector<Complex> values;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv(line);
        if (!header_seen) {
            header_seen = true;
            if (cells.size() >= 3 && cells[0] == "index") continue;  // header row
            throw_error(ErrorCode::MalformedCsv, path + ": missing 'index,re,im' header");
        }
        if (cells.size() != 3) {
            throw_error(ErrorCode::MalformedCsv,
                        path + ":" + std::to_string(line_no) + ": expected 3 columns");
        }
        const double re = parse_cell(cells[1], path, line_no);
        const double im = parse_cell(cells[2], path, line_no);
        values.emplace_back(re, im);
    }
    if (values.empty()) throw_error(ErrorCode::EmptySignal, path + " has no data rows");
    ComplexVector f(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) f(static_cast<Eigen::Index>(i)) = values[i];
    return f;
}

void write_features_csv(const std::string& path, const FeatureSet& features) {
    if (features.empty()) throw_error(ErrorCode::EmptySignal, "empty feature set");
    const Eigen::Index d = features.front().size();
    auto out = open_out(path);
    out << "index";
    for (Eigen::Index j = 0; j < d; ++j) out << ",re_" << j << ",im_" << j;
    out << '\n';
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i].size() != d) {
            throw_error(ErrorCode::DimensionMismatch, "ragged feature set");
        }
        out << i;
        for (Eigen::Index j = 0; j < d; ++j) {
            out << ',' << format_double(features[i](j).real()) << ','
                << format_double(features[i](j).imag());
        }
        out << '\n';
    }
}

FeatureSet read_features_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    FeatureSet features;
    int line_no = 0;
    Eigen::Index d = -1;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv(line);
        if (!header_seen) {
            header_seen = true;
            if (cells.size() >= 3 && cells[0] == "index" && cells.size() % 2 == 1) {
                d = static_cast<Eigen::Index>((cells.size() - 1) / 2);
                continue;
            }
            throw_error(ErrorCode::MalformedCsv, path + ": missing feature header");
        }
        if (static_cast<Eigen::Index>(cells.size()) != 1 + 2 * d) {
            throw_error(ErrorCode::MalformedCsv,
                        path + ":" + std::to_string(line_no) + ": wrong column count");
        }
        FeatureVector z(d);
        for (Eigen::Index j = 0; j < d; ++j) {
            const double re = parse_cell(cells[static_cast<std::size_t>(1 + 2 * j)], path, line_no);
            const double im = parse_cell(cells[static_cast<std::size_t>(2 + 2 * j)], path, line_no);
            z(j) = Complex(re, im);
        }
        features.push_back(std::move(z));
    }
    if (features.empty()) throw_error(ErrorCode::EmptySignal, path + " has no data rows");
    return features;
}

void write_edge_list_csv(const std::string& path, const Graph& g) {
    auto out = open_out(path);
    out << "n,m,w\n";
    const Eigen::Index n = g.w.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (g.w(i, j) != 0.0) {
                out << i << ',' << j << ',' << format_double(g.w(i, j)) << '\n';
            }
        }
    }
}

Graph read_edge_list_csv(const std::string& path, int n) {
    auto in = open_in(path);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    struct Edge {
        int n, m;
        double w;
    };
    std::vector<Edge> edges;
    int max_index = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv(line);
        if (!header_seen) {
            header_seen = true;
            if (cells.size() == 3 && cells[0] == "n") continue;
            throw_error(ErrorCode::MalformedCsv, path + ": missing 'n,m,w' header");
        }
        if (cells.size() != 3) {
            throw_error(ErrorCode::MalformedCsv,
                        path + ":" + std::to_string(line_no) + ": expected 3 columns");
        }
        Edge e;
        e.n = static_cast<int>(parse_cell(cells[0], path, line_no));
        e.m = static_cast<int>(parse_cell(cells[1], path, line_no));
        e.w = parse_cell(cells[2], path, line_no);
        if (e.n < 0 || e.m < 0) {
            throw_error(ErrorCode::MalformedCsv,
                        path + ":" + std::to_string(line_no) + ": negative vertex index");
        }
        max_index = std::max({max_index, e.n, e.m});
        edges.push_back(e);
    }
    const int size = n > 0 ? n : max_index + 1;
    if (size <= 0) throw_error(ErrorCode::EmptyGraph, path + " defines no vertices");
    if (max_index >= size) {
        throw_error(ErrorCode::IndexOutOfRange, path + " has vertex indices beyond n");
    }
    RealMatrix w = RealMatrix::Zero(size, size);
    for (const auto& e : edges) {
        w(e.n, e.m) = e.w;
        w(e.m, e.n) = e.w;
    }
    return Graph::from_adjacency(w);
}

void write_adjacency_csv(const std::string& path, const Graph& g) {
    auto out = open_out(path);
    const Eigen::Index n = g.w.rows();
    for (Eigen::Index j = 0; j < n; ++j) out << (j ? "," : "") << "j_" << j;
    out << '\n';
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out << (j ? "," : "") << format_double(g.w(i, j));
        }
        out << '\n';
    }
}

Graph read_adjacency_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv(line);
        if (!header_seen) {
            header_seen = true;
            if (!cells.empty() && cells[0].rfind("j_", 0) == 0) continue;
            throw_error(ErrorCode::MalformedCsv, path + ": missing adjacency header");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) row.push_back(parse_cell(cell, path, line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw_error(ErrorCode::EmptyGraph, path + " has no data rows");
    const std::size_t n = rows.size();
    RealMatrix w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw_error(ErrorCode::MalformedCsv, path + ": adjacency must be square");
        }
        for (std::size_t j = 0; j < n; ++j) {
            w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return Graph::from_adjacency(w);
}

IngestResult ingest_complex_csv(const std::string& path, bool preprocess) {
    IngestResult res;
    res.signal = read_signal_csv(path);
    res.meta.preprocessed = preprocess;
    if (!preprocess) {
        res.meta.max_magnitude = res.signal.size() > 0 ? res.signal.cwiseAbs().maxCoeff() : 0.0;
        return res;
    }
    for (Eigen::Index i = 0; i < res.signal.size(); ++i) {
        double re = res.signal(i).real();
        double im = res.signal(i).imag();
        if (re < 0.0) {
            re += 256.0;
            ++res.meta.shifted_components;
        }
        if (im < 0.0) {
            im += 256.0;
            ++res.meta.shifted_components;
        }
        res.signal(i) = Complex(re, im);
    }
    const double scale = res.signal.cwiseAbs().maxCoeff();
    res.meta.max_magnitude = scale;
    if (scale > 0.0) res.signal /= scale;
    return res;
}

}  // namespace cgsp
