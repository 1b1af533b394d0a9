#include "traincap/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "traincap/util.hpp"

namespace traincap {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string t;
    while (in >> t) {
        if (t.front() == '#') break;  // trailing comment
        tokens.push_back(t);
    }
    return tokens;
}

std::int64_t int_field(const std::string& token, const char* what, std::size_t line) {
    auto v = parse_int(token);
    if (!v) throw ParseError(std::string(what) + " is not an integer: `" + token + "`", line);
    return *v;
}

}  // namespace

NetworkSpec load_network(std::istream& source) {
    NetworkSpec net;
    bool have_input = false;
    bool in_classifier = false;
    int feature_id = 0;
    int classifier_id = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& directive = tokens[0];
        auto expect_args = [&](std::size_t n) {
            if (tokens.size() != n + 1)
                throw ParseError("`" + directive + "` takes " + std::to_string(n) +
                                     " arguments, got " + std::to_string(tokens.size() - 1),
                                 line_no);
        };

        if (directive == "input") {
            expect_args(3);
            if (have_input) throw ParseError("duplicate `input` line", line_no);
            net.input_shape = {int_field(tokens[1], "input width", line_no),
                               int_field(tokens[2], "input height", line_no),
                               int_field(tokens[3], "input depth", line_no)};
            have_input = true;
            continue;
        }
        if (!have_input)
            throw ParseError("network file must start with an `input B H D` line", line_no);

        if (directive == "conv" || directive == "pool") {
            if (in_classifier)
                throw ParseError("feature layer after the first `fc` layer", line_no);
            FeatureLayerSpec l;
            l.layer_id = ++feature_id;
            if (directive == "conv") {
                expect_args(4);
                l.kind = LayerKind::convolution;
                l.filter_count = int_field(tokens[4], "filter count", line_no);
            } else {
                expect_args(3);
                l.kind = LayerKind::pooling;
            }
            l.filter_size = int_field(tokens[1], "filter size", line_no);
            l.stride = int_field(tokens[2], "stride", line_no);
            l.padding = int_field(tokens[3], "padding", line_no);
            net.feature_layers.push_back(l);
        } else if (directive == "fc") {
            expect_args(1);
            in_classifier = true;
            net.classifier_layers.push_back(
                {int_field(tokens[1], "neuron count", line_no), ++classifier_id});
        } else {
            throw ParseError("unknown directive `" + directive +
                                 "` (expected input, conv, pool, or fc)",
                             line_no);
        }
    }
    if (!have_input) throw ParseError("network file has no `input` line");
    return net;
}

NetworkSpec load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open network file: " + path);
    return load_network(in);
}

StepTrace load_step_trace(std::istream& source) {
    StepTrace trace;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2 && tokens.size() != 3)
            throw ParseError("expected `<step> <seconds> [hidden]`", line_no);

        auto step = pipeline_step_from_string(tokens[0]);
        if (!step) throw ParseError("unknown pipeline step `" + tokens[0] + "`", line_no);
        if (trace.times.count(*step))
            throw ParseError("duplicate step `" + tokens[0] + "`", line_no);

        auto seconds = parse_double(tokens[1]);
        if (!seconds)
            throw ParseError("step time is not a number: `" + tokens[1] + "`", line_no);
        trace.times[*step] = *seconds;

        if (tokens.size() == 3) {
            if (tokens[2] != "hidden")
                throw ParseError("trailing token must be `hidden`, got `" + tokens[2] + "`",
                                 line_no);
            trace.hidden.insert(*step);
        }
    }
    return trace;
}

StepTrace load_step_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open step-times file: " + path);
    return load_step_trace(in);
}

}  // namespace traincap
