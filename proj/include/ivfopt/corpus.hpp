#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ivfopt/ivf.hpp"

namespace ivfopt {

/// Built-in functions, compiled from the files under corpus/ at build time.

/// Registered names in lexicographic order.
std::vector<std::string> corpus_names();

/// Text of the named entry, identical to the shipped file.
std::string_view corpus_text(std::string_view name);

/// Parsed entry. Throws UnknownCorpusEntry.
Ivf corpus_get(std::string_view name);

}  // namespace ivfopt
