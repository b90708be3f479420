#pragma once

#include <cstddef>
#include <string_view>

namespace ivfopt::detail {

struct CorpusFile {
    std::string_view name;
    std::string_view text;
};

extern const CorpusFile kCorpusFiles[];
extern const std::size_t kCorpusFileCount;

}  // namespace ivfopt::detail
