#ifndef QCSP_TESTS_FIXTURES_HPP
#define QCSP_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "qcsp/harness.hpp"
#include "qcsp/text_format.hpp"

namespace fixtures {

inline qcsp::Qcsp phi(int k) {
  return qcsp::load_qcsp(std::string(QCSP_DATA_DIR) + "/phi" +
                         std::to_string(k) + ".qcsp");
}

inline qcsp::Qcsp parse(const std::string& text) {
  return qcsp::parse_qcsp(text);
}

/// The 200-instance random regime used throughout: n <= 4, |D| <= 3.
inline const std::vector<qcsp::Qcsp>& corpus() {
  static const std::vector<qcsp::Qcsp> instances =
      qcsp::random_corpus(200, 20240611, 4, 3);
  return instances;
}

}  // namespace fixtures

#endif  // QCSP_TESTS_FIXTURES_HPP
