#include "traincap/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "traincap/util.hpp"

namespace traincap {

namespace {

constexpr const char* kCsvHeader = "layer_id,algorithm,batch_size,time_seconds,memory_bits";

std::tuple<int, std::int64_t, const AlgorithmId&> sort_key(const CostEntry& e) {
    return {e.layer_id, e.batch_size, e.algorithm};
}

void check_entry_fields(const CostEntry& e, std::size_t line) {
    if (e.layer_id < 1) throw ParseError("layer_id must be >= 1", line);
    if (e.algorithm.empty()) throw ParseError("algorithm name must be non-empty", line);
    if (e.batch_size < 1) throw ParseError("batch_size must be >= 1", line);
    if (!(e.time_seconds > 0.0)) throw ParseError("time_seconds must be > 0", line);
    if (e.memory_bits < 0) throw ParseError("memory_bits must be >= 0", line);
}

std::vector<std::string> split_csv_row(const std::string& row) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = row.find(',', start);
        if (comma == std::string::npos) {
            fields.emplace_back(trim(std::string_view(row).substr(start)));
            break;
        }
        fields.emplace_back(trim(std::string_view(row).substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

AlgorithmCatalog::AlgorithmCatalog(std::vector<CostEntry> entries,
                                   const std::vector<std::size_t>* source_lines) {
    // Entry index -> original input line, for duplicate diagnostics.
    auto line_of = [&](std::size_t idx) {
        return source_lines ? (*source_lines)[idx] : idx + 1;
    };

    std::map<std::tuple<int, AlgorithmId, std::int64_t>, std::size_t> seen;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const CostEntry& e = entries[i];
        check_entry_fields(e, line_of(i));
        auto [it, inserted] = seen.emplace(std::tuple{e.layer_id, e.algorithm, e.batch_size}, i);
        if (!inserted)
            throw DuplicateKeyError(
                "duplicate catalog key (layer " + std::to_string(e.layer_id) + ", " +
                e.algorithm + ", batch " + std::to_string(e.batch_size) + ") on lines " +
                std::to_string(line_of(it->second)) + " and " + std::to_string(line_of(i)));
    }

    if (entries.empty())
        throw IncompleteCatalogError("catalog has no entries");

    for (const CostEntry& e : entries) {
        layer_count_ = std::max(layer_count_, e.layer_id);
        if (!std::binary_search(batch_sizes_.begin(), batch_sizes_.end(), e.batch_size)) {
            batch_sizes_.insert(std::upper_bound(batch_sizes_.begin(), batch_sizes_.end(),
                                                 e.batch_size),
                                e.batch_size);
        }
        if (std::find(algorithms_.begin(), algorithms_.end(), e.algorithm) == algorithms_.end())
            algorithms_.push_back(e.algorithm);
    }
    std::sort(algorithms_.begin(), algorithms_.end());

    // Planning requires every (layer, declared batch) pair to be coverable.
    for (int layer = 1; layer <= layer_count_; ++layer) {
        for (std::int64_t batch : batch_sizes_) {
            bool found = std::any_of(entries.begin(), entries.end(), [&](const CostEntry& e) {
                return e.layer_id == layer && e.batch_size == batch;
            });
            if (!found)
                throw IncompleteCatalogError(
                    "no algorithm profiled for layer " + std::to_string(layer) +
                    " at batch size " + std::to_string(batch));
        }
    }

    std::sort(entries.begin(), entries.end(),
              [](const CostEntry& a, const CostEntry& b) { return sort_key(a) < sort_key(b); });
    entries_ = std::move(entries);
}

bool AlgorithmCatalog::has_batch_size(std::int64_t batch_size) const {
    return std::binary_search(batch_sizes_.begin(), batch_sizes_.end(), batch_size);
}

std::optional<CostEntry> AlgorithmCatalog::query(int layer_id, const AlgorithmId& algorithm,
                                                 std::int64_t batch_size) const {
    for (const CostEntry& e : entries_)
        if (e.layer_id == layer_id && e.batch_size == batch_size && e.algorithm == algorithm)
            return e;
    return std::nullopt;
}

std::vector<CostEntry> AlgorithmCatalog::options(int layer_id, std::int64_t batch_size) const {
    std::vector<CostEntry> out;
    for (const CostEntry& e : entries_)
        if (e.layer_id == layer_id && e.batch_size == batch_size) out.push_back(e);
    std::sort(out.begin(), out.end(), [](const CostEntry& a, const CostEntry& b) {
        return std::tuple{a.time_seconds, a.memory_bits, a.algorithm} <
               std::tuple{b.time_seconds, b.memory_bits, b.algorithm};
    });
    return out;
}

namespace {

AlgorithmCatalog load_csv(std::istream& source) {
    std::string row;
    std::size_t line = 0;

    if (!std::getline(source, row))
        throw ParseError("empty catalog file");
    ++line;
    if (trim(row) != kCsvHeader)
        throw ParseError(std::string("expected header `") + kCsvHeader + "`", line);

    std::vector<CostEntry> entries;
    std::vector<std::size_t> lines;
    while (std::getline(source, row)) {
        ++line;
        if (trim(row).empty()) continue;
        auto fields = split_csv_row(row);
        if (fields.size() != 5)
            throw ParseError("expected 5 comma-separated fields, got " +
                                 std::to_string(fields.size()),
                             line);
        CostEntry e;
        auto layer = parse_int(fields[0]);
        auto batch = parse_int(fields[2]);
        auto time = parse_double(fields[3]);
        auto memory = parse_int(fields[4]);
        if (!layer) throw ParseError("layer_id is not an integer: `" + fields[0] + "`", line);
        if (!batch) throw ParseError("batch_size is not an integer: `" + fields[2] + "`", line);
        if (!time) throw ParseError("time_seconds is not a number: `" + fields[3] + "`", line);
        if (!memory) throw ParseError("memory_bits is not an integer: `" + fields[4] + "`", line);
        e.layer_id = static_cast<int>(*layer);
        e.algorithm = fields[1];
        e.batch_size = *batch;
        e.time_seconds = *time;
        e.memory_bits = *memory;
        check_entry_fields(e, line);
        entries.push_back(std::move(e));
        lines.push_back(line);
    }
    return AlgorithmCatalog(std::move(entries), &lines);
}

AlgorithmCatalog load_json(std::istream& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(source);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw ParseError("catalog JSON must be an array of entry objects");

    // "Lines" are 1-based array positions for JSON sources.
    std::vector<CostEntry> entries;
    std::vector<std::size_t> lines;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& obj = doc[i];
        std::size_t pos = i + 1;
        if (!obj.is_object())
            throw ParseError("catalog entry is not an object", pos);
        for (const char* key : {"layer_id", "algorithm", "batch_size", "time_seconds",
                                "memory_bits"})
            if (!obj.contains(key))
                throw ParseError(std::string("missing key `") + key + "`", pos);
        CostEntry e;
        try {
            e.layer_id = obj.at("layer_id").get<int>();
            e.algorithm = obj.at("algorithm").get<std::string>();
            e.batch_size = obj.at("batch_size").get<std::int64_t>();
            e.time_seconds = obj.at("time_seconds").get<double>();
            e.memory_bits = obj.at("memory_bits").get<std::int64_t>();
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError(std::string("bad entry field: ") + ex.what(), pos);
        }
        check_entry_fields(e, pos);
        entries.push_back(std::move(e));
        lines.push_back(pos);
    }
    return AlgorithmCatalog(std::move(entries), &lines);
}

}  // namespace

AlgorithmCatalog load_catalog(std::istream& source, CatalogFormat format) {
    return format == CatalogFormat::csv ? load_csv(source) : load_json(source);
}

AlgorithmCatalog load_catalog_file(const std::string& path) {
    CatalogFormat format = path.size() >= 5 && path.substr(path.size() - 5) == ".json"
                               ? CatalogFormat::json
                               : CatalogFormat::csv;
    return load_catalog_file(path, format);
}

AlgorithmCatalog load_catalog_file(const std::string& path, CatalogFormat format) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open catalog file: " + path);
    return load_catalog(in, format);
}

std::string save_catalog(const AlgorithmCatalog& catalog, CatalogFormat format) {
    if (format == CatalogFormat::csv) {
        std::ostringstream out;
        out << kCsvHeader << '\n';
        for (const CostEntry& e : catalog.entries())
            out << e.layer_id << ',' << e.algorithm << ',' << e.batch_size << ','
                << to_shortest_string(e.time_seconds) << ',' << e.memory_bits << '\n';
        return out.str();
    }
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const CostEntry& e : catalog.entries()) {
        nlohmann::ordered_json obj;
        obj["layer_id"] = e.layer_id;
        obj["algorithm"] = e.algorithm;
        obj["batch_size"] = e.batch_size;
        obj["time_seconds"] = e.time_seconds;
        obj["memory_bits"] = e.memory_bits;
        doc.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

}  // namespace traincap
