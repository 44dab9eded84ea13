#ifndef MODEUSKB_CORPUS_HPP
#define MODEUSKB_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "modeuskb/parser.hpp"

namespace modeus {

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One editorial repair of the printed appendix. The table is exhaustive:
/// every difference between the printed text and the shipped files has a row.
struct NormalizationEntry {
    std::string location;
    std::string printed;
    std::string canonical;
    std::string rationale;
};

/// One golden expectation: CLI arguments and the file holding their bytes.
struct GoldenCase {
    std::string name;
    std::vector<std::string> arguments;
    std::string expectedFile;
    std::string provenance;
};

struct CorpusData {
    std::filesystem::path dir;
    Ontology tbox;
    Ontology abox;
    std::string q23;
    std::string q24;
    std::vector<NormalizationEntry> normalization;
    std::vector<GoldenCase> goldens;
};

uint64_t fnv1a64(std::string_view bytes);

std::string readTextFile(const std::filesystem::path& path);  // throws CorpusError

/// Load the bundled transcriptions. Verifies checksums.tsv first and fails
/// with "corpus corruption (hash mismatch)" on any drift; both ontologies
/// must parse in strict mode with zero errors.
CorpusData loadCorpus(const std::filesystem::path& dir);

}  // namespace modeus

#endif
