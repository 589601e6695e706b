#ifndef QCSP_TEXT_FORMAT_HPP
#define QCSP_TEXT_FORMAT_HPP

#include <string>
#include <string_view>

#include "qcsp/model.hpp"

namespace qcsp {

// Line-oriented problem files:
//
//   qcsp
//   var x1 exists 2..3
//   var x2 forall {3,4}
//   constraint expr x1 + x2 <= 5
//   constraint table (x1, x2) : (2,3) (3,3)
//
// `#` starts a comment. Declaration order is the quantifier prefix.
// Constraints may mention any variable declared anywhere in the file.

/// Throws ParseError (1-based line and column) on any malformed input.
Qcsp parse_qcsp(std::string_view text, const Limits& limits = {});

/// Reads a file and parses it. Throws Error when the file cannot be read.
Qcsp load_qcsp(const std::string& path, const Limits& limits = {});

/// Canonical text: every constraint as a table, domains as `lo..hi` when
/// contiguous. Rows holding values outside the current domains (left behind
/// by domain edits) are omitted, so the output always parses back.
std::string print_qcsp(const Qcsp& phi);

}  // namespace qcsp

#endif  // QCSP_TEXT_FORMAT_HPP
