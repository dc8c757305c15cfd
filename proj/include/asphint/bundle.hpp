#pragma once

// Exercise bundles: one JSON document per exercise, programs embedded as ASP
// source strings.
//
//   {
//     "id": "cities",
//     "statement": "...",
//     "given": "road(istanbul,kocaeli). ...",
//     "reference": "open_road(X,Y) :- ...",
//     "question_predicates": [{"predicate": "open_road", "arity": 2}],
//     "notes": "optional"
//   }

#include <asphint/pipeline.hpp>

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace asphint {

class BundleError : public ExerciseError {
public:
    using ExerciseError::ExerciseError;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BundleError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Exercise exercise_from_json(const nlohmann::json& j, const SolveOptions& solve = {}) {
    if (!j.is_object()) throw BundleError("exercise bundle must be a JSON object");
    for (const char* field : {"id", "statement", "given", "reference"}) {
        if (!j.contains(field)) throw BundleError(std::string("missing field: ") + field);
        if (!j.at(field).is_string()) throw BundleError(std::string("field must be a string: ") + field);
    }
    if (!j.contains("question_predicates")) throw BundleError("missing field: question_predicates");
    const auto& qp = j.at("question_predicates");
    if (!qp.is_array()) throw BundleError("field must be an array: question_predicates");

    std::set<Signature> questions;
    for (const auto& q : qp) {
        if (!q.is_object() || !q.contains("predicate") || !q.contains("arity") || !q.at("predicate").is_string() ||
            !q.at("arity").is_number_unsigned())
            throw BundleError("question_predicates entries need a string 'predicate' and an unsigned 'arity'");
        questions.insert({q.at("predicate").get<std::string>(), q.at("arity").get<std::size_t>()});
    }
    auto id = j.at("id").get<std::string>();
    if (id.empty()) throw BundleError("field must not be empty: id");

    Exercise ex = make_exercise(id, j.at("statement").get<std::string>(), j.at("given").get<std::string>(),
                                j.at("reference").get<std::string>(), std::move(questions), solve);

    std::set<Signature> defined;
    for (const auto& r : ex.reference_rules.rules)
        for (const auto& h : r.head) defined.insert(signature(h));
    for (const auto& q : ex.question_predicates)
        if (!defined.count(q))
            throw ExerciseError("question predicate " + q.predicate + "/" + std::to_string(q.arity) +
                                " is not defined by the reference rules");
    return ex;
}

inline Exercise load_exercise(const std::filesystem::path& path, const SolveOptions& solve = {}) {
    auto text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw BundleError(path.string() + ": " + e.what());
    }
    return exercise_from_json(j, solve);
}

// Every *.json file in `dir`, sorted by file name.
inline std::vector<Exercise> load_exercise_dir(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<Exercise> out;
    for (const auto& f : files) {
        try {
            out.push_back(load_exercise(f));
        } catch (const ExerciseError& e) {
            throw ExerciseError(f.filename().string() + ": " + e.what());
        }
    }
    return out;
}

}  // namespace asphint
