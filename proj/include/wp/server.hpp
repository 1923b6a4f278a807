#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include <json.hpp>

namespace wp::server {

using json = nlohmann::ordered_json;

// JSON-RPC style error codes.
inline constexpr int kParseError = -32700;
inline constexpr int kInvalidRequest = -32600;
inline constexpr int kMethodNotFound = -32601;
inline constexpr int kInvalidParams = -32602;
inline constexpr int kLibraryError = -32001;
inline constexpr int kDocumentError = -32002;
inline constexpr int kCheckError = -32003;

// One request object in, one response object out. Never throws.
json handle(const json& request);
// Same, on serialized text; malformed JSON yields a parse-error response.
std::string handle_text(const std::string& text);

// Newline-delimited JSON: one request per line, one response per line.
void serve_stdio(std::istream& in, std::ostream& out);

// POST /rpc with the same payloads.
class HttpServer {
public:
    HttpServer();
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Binds (port 0 picks a free port) and serves on a background thread.
    // Returns the bound port, or -1.
    int start(const std::string& host, int port);
    // Binds and serves on the calling thread.
    bool run(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace wp::server
