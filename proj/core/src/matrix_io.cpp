#include "paltile/matrix_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "paltile/errors.hpp"

namespace paltile {

namespace {

void parse_header(std::istream& in, std::size_t& rows, std::size_t& cols) {
    std::string line;
    if (!std::getline(in, line))
        throw DataError("matrix file: missing header line");
    unsigned long long m = 0, n = 0;
    char tail = 0;
    int got = std::sscanf(line.c_str(), "# rows=%llu cols=%llu%c", &m, &n, &tail);
    if (got != 2 || line.find('-') != std::string::npos)
        throw DataError("matrix file: bad header '" + line + "'");
    rows = static_cast<std::size_t>(m);
    cols = static_cast<std::size_t>(n);
}

void reject_trailing(std::istream& in) {
    std::string line;
    if (std::getline(in, line))
        throw DataError("matrix file: trailing content after last row");
}

unsigned long long parse_index(const std::string& token) {
    if (token.empty())
        throw DataError("matrix file: empty index token");
    for (char c : token)
        if (c < '0' || c > '9')
            throw DataError("matrix file: bad index '" + token + "'");
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(token.c_str(), &end, 10);
    if (errno != 0 || end != token.c_str() + token.size())
        throw DataError("matrix file: bad index '" + token + "'");
    return v;
}

}  // namespace

void write_sparse(std::ostream& out, const BinaryMatrix& m) {
    out << "# rows=" << m.rows() << " cols=" << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool first = true;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j)) continue;
            if (!first) out << ' ';
            out << j;
            first = false;
        }
        out << '\n';
    }
}

void write_sparse(const std::filesystem::path& path, const BinaryMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot open for writing: " + path.string());
    write_sparse(out, m);
    out.flush();
    if (!out)
        throw DataError("write failed: " + path.string());
}

BinaryMatrix read_sparse(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    parse_header(in, rows, cols);
    BinaryMatrix m(rows, cols);
    std::string line;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!std::getline(in, line))
            throw DataError("matrix file: expected " + std::to_string(rows) +
                            " rows, got " + std::to_string(i));
        std::istringstream ls(line);
        std::string token;
        bool have_prev = false;
        unsigned long long prev = 0;
        while (ls >> token) {
            unsigned long long j = parse_index(token);
            if (j >= cols)
                throw DataError("matrix file: column index " + std::to_string(j) +
                                " out of range in row " + std::to_string(i));
            if (have_prev && j <= prev)
                throw DataError("matrix file: indices not strictly ascending in row " +
                                std::to_string(i));
            m.set(i, static_cast<std::size_t>(j), 1);
            prev = j;
            have_prev = true;
        }
    }
    reject_trailing(in);
    return m;
}

BinaryMatrix read_sparse(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open: " + path.string());
    return read_sparse(in);
}

void write_dense(std::ostream& out, const RealMatrix& m) {
    out << "# rows=" << m.rows() << " cols=" << m.cols() << '\n';
    char buf[40];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            if (j) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

void write_dense(const std::filesystem::path& path, const RealMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot open for writing: " + path.string());
    write_dense(out, m);
    out.flush();
    if (!out)
        throw DataError("write failed: " + path.string());
}

RealMatrix read_dense(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    parse_header(in, rows, cols);
    RealMatrix m(rows, cols);
    std::string line;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!std::getline(in, line))
            throw DataError("matrix file: expected " + std::to_string(rows) +
                            " rows, got " + std::to_string(i));
        std::istringstream ls(line);
        std::string token;
        std::size_t j = 0;
        while (ls >> token) {
            if (j >= cols)
                throw DataError("matrix file: too many values in row " + std::to_string(i));
            errno = 0;
            char* end = nullptr;
            double v = std::strtod(token.c_str(), &end);
            if (errno != 0 || end != token.c_str() + token.size())
                throw DataError("matrix file: bad value '" + token + "'");
            m.set(i, j, v);
            ++j;
        }
        if (j != cols)
            throw DataError("matrix file: row " + std::to_string(i) + " has " +
                            std::to_string(j) + " values, expected " +
                            std::to_string(cols));
    }
    reject_trailing(in);
    return m;
}

RealMatrix read_dense(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open: " + path.string());
    return read_dense(in);
}

}  // namespace paltile
