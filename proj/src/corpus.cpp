#include "ivfopt/corpus.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "corpus_data.hpp"
#include "ivfopt/errors.hpp"

namespace ivfopt {

namespace {

const detail::CorpusFile* find(std::string_view name) {
    for (std::size_t i = 0; i < detail::kCorpusFileCount; ++i) {
        if (detail::kCorpusFiles[i].name == name) return &detail::kCorpusFiles[i];
    }
    return nullptr;
}

}  // namespace

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < detail::kCorpusFileCount; ++i) out.emplace_back(detail::kCorpusFiles[i].name);
    std::sort(out.begin(), out.end());
    return out;
}

std::string_view corpus_text(std::string_view name) {
    const detail::CorpusFile* f = find(name);
    if (f == nullptr) throw UnknownCorpusEntry("unknown corpus entry '" + std::string(name) + "'");
    return f->text;
}

Ivf corpus_get(std::string_view name) {
    // Parsing validates on a dense grid; cache the result per entry.
    static std::mutex mu;
    static std::map<std::string, Ivf, std::less<>> cache;
    const std::string_view text = corpus_text(name);
    std::lock_guard lock(mu);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    Ivf f = Ivf::parse(text);
    cache.emplace(std::string(name), f);
    return f;
}

}  // namespace ivfopt
