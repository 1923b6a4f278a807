#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wp/document.hpp"
#include "wp/grade.hpp"
#include "wp/server.hpp"
#include "wp/version.hpp"

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write " + path);
}

wp::Environment library(const std::string& path) {
    if (path.empty()) return {};
    return wp::doc::load_library(read_file(path));
}

int check(const std::string& file, const std::string& lib) {
    auto env = library(lib);
    auto doc = wp::doc::parse_document(read_file(file));
    auto result = wp::doc::check_document(doc, env);
    auto diags = result.diagnostics();
    for (const auto& d : diags) {
        std::cout << file << ":" << d.span.start_line << ":" << d.span.start_col << ": error: " << d.message << "\n";
        if (d.hint) std::cout << "  hint: " << *d.hint << "\n";
    }
    for (const auto& u : result.units)
        std::cout << "lemma " << u.lemma << ": " << (u.first_error ? "error" : u.complete ? "complete" : "unfinished")
                  << "\n";
    for (std::size_t i = 0; i < result.areas.size(); ++i)
        std::cout << "input area " << i + 1 << " (line " << result.areas[i].line
                  << "): " << (result.areas[i].green ? "green" : "red") << "\n";
    return diags.empty() ? 0 : 1;
}

int sheet(const std::string& master, const std::string& out) {
    auto doc = wp::doc::parse_document(read_file(master));
    write_file(out, wp::doc::render_document(wp::doc::extract_sheet(doc)));
    return 0;
}

int grade(const std::string& original, const std::string& submission, const std::string& lib,
          const std::string& json_path, double timeout) {
    auto env = library(lib);
    auto o = wp::doc::parse_document(read_file(original));
    auto s = wp::doc::parse_document(read_file(submission));
    wp::grade::GradeOptions opts;
    opts.timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
    auto report = wp::grade::grade(o, s, env, opts);
    if (!json_path.empty()) write_file(json_path, wp::grade::to_json(report));
    std::cout << wp::grade::to_text(report);
    return report.tamper ? 2 : 0;
}

int serve(int port, const std::string& host) {
    if (port < 0) {
        wp::server::serve_stdio(std::cin, std::cout);
        return 0;
    }
    wp::server::HttpServer server;
    std::cerr << "listening on http://" << host << ":" << port << "/rpc\n";
    return server.run(host, port) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Controlled natural language proof checker"};
    app.set_version_flag("--version", wp::kCheckerVersion);
    app.require_subcommand(1);

    std::string file, lib, master, out, original, submission, json_path, host = "127.0.0.1";
    double timeout = 10;
    int port = -1;
    bool stdio = false;

    auto* c = app.add_subcommand("check", "Check a document and print diagnostics");
    c->add_option("file", file, "Document (.wpd)")->required();
    c->add_option("--library", lib, "Course library (.wpl)");

    auto* sh = app.add_subcommand("sheet", "Extract an exercise sheet from a master document");
    sh->add_option("master", master, "Master document")->required();
    sh->add_option("-o,--output", out, "Sheet to write")->required();

    auto* g = app.add_subcommand("grade", "Grade a submission against the original sheet");
    g->add_option("--original", original, "Original document")->required();
    g->add_option("--submission", submission, "Student submission")->required();
    g->add_option("--library", lib, "Course library (.wpl)")->required();
    g->add_option("--json", json_path, "Write the JSON report here");
    g->add_option("--timeout", timeout, "Seconds per exercise")->check(CLI::PositiveNumber);

    auto* sv = app.add_subcommand("serve", "Serve checking requests");
    auto* http = sv->add_option("--http", port, "Serve HTTP POST /rpc on this port");
    sv->add_flag("--stdio", stdio, "Newline-delimited JSON on stdin/stdout (default)")->excludes(http);
    sv->add_option("--host", host, "Address to bind for --http");

    CLI11_PARSE(app, argc, argv);
    try {
        if (c->parsed()) return check(file, lib);
        if (sh->parsed()) return sheet(master, out);
        if (g->parsed()) return grade(original, submission, lib, json_path, timeout);
        if (sv->parsed()) return serve(port, host);
    } catch (const std::exception& e) {
        std::cerr << "wp: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
