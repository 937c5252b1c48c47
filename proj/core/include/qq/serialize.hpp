#pragma once

// JSON documents for algorithms.  Output is canonical (keys sorted, reals
// printed with 17 significant digits, no whitespace), so saving a loaded
// document reproduces it byte for byte.

#include <stdexcept>
#include <string>

#include "qq/state.hpp"

namespace qq {

inline constexpr int kSchemaVersion = 1;

// Raised for anything wrong with a document: unreadable file, bad JSON,
// missing fields, or contents that fail structural validation.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgorithmDocument {
  QueryAlgorithm algorithm;
  std::string notes;
};

std::string to_document(const QueryAlgorithm& alg,
                        const std::string& notes = "");
AlgorithmDocument from_document(const std::string& text);

void save_algorithm(const QueryAlgorithm& alg, const std::string& path,
                    const std::string& notes = "");
AlgorithmDocument load_algorithm(const std::string& path);

}  // namespace qq
