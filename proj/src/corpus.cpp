#include "modeuskb/corpus.hpp"

#include <fstream>
#include <sstream>

namespace modeus {

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string readTextFile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("file not found: " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

namespace {

std::vector<std::vector<std::string>> readTsv(const std::filesystem::path& path) {
    std::string text = readTextFile(path);
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        size_t start = 0;
        while (true) {
            size_t tab = line.find('\t', start);
            cells.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string hex64(uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

}  // namespace

CorpusData loadCorpus(const std::filesystem::path& dir) {
    CorpusData corpus;
    corpus.dir = dir;

    for (const auto& row : readTsv(dir / "checksums.tsv")) {
        if (row.size() != 2 || row[0] == "fnv1a64") continue;
        std::string actual = hex64(fnv1a64(readTextFile(dir / row[1])));
        if (actual != row[0])
            throw CorpusError("corpus corruption (hash mismatch): " + row[1]);
    }

    auto parseStrict = [&dir](const char* file) {
        ParseResult result = parseText(readTextFile(dir / file), ParseMode::Strict);
        return result.ontology;
    };
    corpus.tbox = parseStrict("tbox.ofn");
    corpus.abox = parseStrict("abox.ofn");
    corpus.q23 = readTextFile(dir / "q23.rq");
    corpus.q24 = readTextFile(dir / "q24.rq");

    bool header = true;
    for (const auto& row : readTsv(dir / "normalization.tsv")) {
        if (header) {
            header = false;
            continue;
        }
        if (row.size() != 4) throw CorpusError("malformed normalization.tsv row");
        corpus.normalization.push_back({row[0], row[1], row[2], row[3]});
    }

    auto casesPath = dir / "golden" / "cases.tsv";
    if (std::filesystem::exists(casesPath)) {
        bool first = true;
        for (const auto& row : readTsv(casesPath)) {
            if (first) {
                first = false;
                continue;
            }
            if (row.size() != 4) throw CorpusError("malformed golden cases.tsv row");
            GoldenCase g;
            g.name = row[0];
            std::istringstream args(row[1]);
            std::string arg;
            while (args >> arg) g.arguments.push_back(arg);
            g.expectedFile = row[2];
            g.provenance = row[3];
            corpus.goldens.push_back(std::move(g));
        }
    }
    return corpus;
}

}  // namespace modeus
