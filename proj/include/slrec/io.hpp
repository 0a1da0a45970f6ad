#pragma once

// Text files: a FIELD line followed by MATRIX blocks, and MSLP programs.

#include <string>
#include <vector>

#include "slrec/matfq.hpp"
#include "slrec/mslp.hpp"

namespace slrec {

struct MatrixFile {
    FieldPtr field;
    std::vector<Matrix> matrices;
};

/// `FIELD p f c_0 ... c_f`.
std::string field_line(const Field& F);
FieldPtr parse_field_line(const std::string& line);

/// One FIELD line, then `MATRIX d` and d rows per matrix. All matrices
/// must share the field.
std::string format_matrices(const std::vector<Matrix>& ms);
MatrixFile parse_matrices(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace slrec
