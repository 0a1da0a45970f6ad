#include "slrec/io.hpp"

#include <fstream>
#include <sstream>

namespace slrec {

namespace {

bool blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void fail_at(std::size_t lineno, const std::string& what) {
    throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

std::string field_line(const Field& F) {
    std::ostringstream os;
    os << "FIELD " << F.p() << ' ' << F.f();
    for (auto c : F.modulus()) os << ' ' << c;
    return os.str();
}

FieldPtr parse_field_line(const std::string& line) {
    std::istringstream is(line);
    std::string tag;
    long long p = 0, f = 0;
    if (!(is >> tag >> p >> f) || tag != "FIELD" || p < 2 || f < 1 || f > 32)
        throw ParseError("expected 'FIELD p f c_0 ... c_f'");
    std::vector<std::uint32_t> mod;
    long long c;
    while (is >> c) {
        if (c < 0 || c >= p) throw ParseError("modulus coefficient out of range");
        mod.push_back(std::uint32_t(c));
    }
    if (!is.eof()) throw ParseError("bad token in FIELD line");
    if (mod.size() != std::size_t(f) + 1) throw ParseError("FIELD needs f + 1 modulus coefficients");
    if (mod.back() != 1) throw ParseError("modulus must be monic");
    return Field::make(std::uint32_t(p), std::uint32_t(f), mod);
}

std::string format_matrices(const std::vector<Matrix>& ms) {
    if (ms.empty()) throw ShapeMismatch("nothing to write");
    std::ostringstream os;
    os << field_line(ms.front().field()) << '\n';
    for (const auto& m : ms) {
        if (m.rows() != m.cols()) throw ShapeMismatch("matrix files hold square matrices");
        os << "MATRIX " << m.rows() << '\n';
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
            os << '\n';
        }
    }
    return os.str();
}

MatrixFile parse_matrices(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!blank_or_comment(line)) return true;
        }
        return false;
    };
    MatrixFile out;
    if (!next_line()) throw ParseError("empty matrix file");
    try {
        out.field = parse_field_line(line);
    } catch (const ParseError& e) {
        fail_at(lineno, e.what());
    } catch (const Error& e) {
        fail_at(lineno, e.what());
    }
    const std::uint64_t q = out.field->q();
    while (next_line()) {
        std::istringstream hs(line);
        std::string tag;
        long long d = 0;
        std::string extra;
        if (!(hs >> tag >> d) || tag != "MATRIX" || d < 1 || (hs >> extra)) fail_at(lineno, "expected 'MATRIX d'");
        Matrix m(out.field, int(d), int(d));
        for (int i = 0; i < d; ++i) {
            if (!next_line()) fail_at(lineno, "file ends inside a matrix");
            std::istringstream rs(line);
            long long v;
            int j = 0;
            while (rs >> v) {
                if (j >= d) fail_at(lineno, "row too long");
                if (v < 0 || std::uint64_t(v) >= q) fail_at(lineno, "entry out of range");
                m(i, j++) = Elt(v);
            }
            if (!rs.eof()) fail_at(lineno, "bad token in row");
            if (j != d) fail_at(lineno, "row too short");
        }
        out.matrices.push_back(std::move(m));
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

}  // namespace slrec
