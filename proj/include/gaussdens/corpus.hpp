#pragma once

// Built-in golden corpus: expressions with hand-derived exact densities.

#include <string>
#include <vector>

namespace gaussdens {

enum class Family { product_like, delimited, other };

struct CorpusEntry {
    std::string name;
    std::string expr;   ///< DSL text
    std::string exact;  ///< expected density as "p/q" or "p"
    Family family;
};

const std::vector<CorpusEntry>& golden_corpus();

}  // namespace gaussdens
