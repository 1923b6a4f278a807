#include <doctest.h>

#include <httplib.h>

#include <sstream>

#include "support/support.hpp"
#include "wp/server.hpp"
#include "wp/version.hpp"

using namespace wp;
using wp::server::json;

namespace {

json call(const std::string& method, json params) {
    return server::handle({{"jsonrpc", "2.0"}, {"id", 7}, {"method", method}, {"params", std::move(params)}});
}

json doc_params(const std::string& doc) {
    return {{"docText", doc}, {"libraryText", testing::seed_library_text()}};
}

}  // namespace

TEST_CASE("wp/version") {
    json r = call("wp/version", json::object());
    CHECK(r["id"] == 7);
    CHECK(r["result"]["checker"] == kCheckerVersion);
    CHECK(r["result"]["spec"] == kProtocolVersion);
}

TEST_CASE("wp/check reports sentences, areas and units") {
    json r = call("wp/check", doc_params(testing::data_file("master3.wpd")))["result"];
    CHECK(r["diagnostics"].empty());
    REQUIRE(r["areas"].size() == 3);
    CHECK(r["areas"][0]["status"] == "green");
    CHECK(r["areas"][0]["lemma"] == "ex1");
    CHECK(r["units"][2]["complete"] == true);
    const json& s = r["sentences"][0];
    CHECK(s["status"] == "ok");
    CHECK(s["span"]["startLine"] == 10);
    CHECK(s["span"]["startColumn"] == 1);
    CHECK(s["diagnostic"].is_null());
}

TEST_CASE("wp/check carries diagnostics") {
    std::string golden = testing::data_file("epsilon.wpd");
    std::string broken = golden;
    broken.replace(broken.find("Case (ε < 2)."), std::string("Case (ε < 2).").size(), "");
    json r = call("wp/check", doc_params(broken))["result"];
    REQUIRE(r["diagnostics"].size() == 1);
    CHECK(r["diagnostics"][0]["code"] == "GoalWrapped");
    CHECK(r["diagnostics"][0]["message"] == "Add the following line to the proof:\n  Case (ε < 2).");
    CHECK(r["diagnostics"][0]["span"]["startLine"] == 10);
}

TEST_CASE("wp/goals and wp/help") {
    json p = doc_params(testing::data_file("epsilon.wpd"));
    p["position"] = {{"line", 9}, {"column", 30}};
    json g = call("wp/goals", p)["result"];
    CHECK(g["lemma"] == "example_waterproof");
    CHECK(g["goalOnly"] == "Add the following line to the proof:\n  Case (ε < 2).\n\n"
                           "Add the following line to the proof:\n  Case (ε ≥ 2).");
    CHECK(g["fullContext"]["wrapped"] == true);
    CHECK(g["fullContext"]["variables"][0]["name"] == "ε");
    CHECK(g["fullContext"]["variables"][0]["type"] == "ℝ");
    CHECK(g["fullContext"]["hypotheses"][0]["origin"] == "assumed");
    json h = call("wp/help", p)["result"];
    CHECK(h["suggestion"] == "Case (ε < 2).");

    p["position"] = {{"line", 8}, {"column", 14}};
    CHECK(call("wp/help", p)["result"]["suggestion"] == "Assume that (ε > 0).");
}

TEST_CASE("wp/expand") {
    json r = call("wp/expand", {{"libraryText", testing::seed_library_text()},
                                {"name", "supremum"},
                                {"formula", "1 is the supremum of [0,1)"}});
    REQUIRE(r.contains("result"));
    CHECK(r["result"]["expanded"].get<std::string>().find("1 is an upper bound of [0,1)") != std::string::npos);
    json e = call("wp/expand", {{"libraryText", ""}, {"name", "limit"}, {"formula", "1 < 2"}});
    CHECK(e["error"]["code"] == server::kCheckError);
    CHECK(e["error"]["message"] == "Unknown definition `limit`.");
}

TEST_CASE("wp/complete") {
    json s = call("wp/complete", {{"prefix", "\\inf"}})["result"]["items"];
    REQUIRE(s.size() == 1);
    CHECK(s[0]["insertText"] == "∞");
    json t = call("wp/complete", {{"prefix", "Take"}})["result"]["items"];
    REQUIRE(t.size() == 1);
    CHECK(t[0]["insertText"] == "Take ${1:x} : ${2:ℝ}.");
    json a = call("wp/complete", {{"prefix", "assume"}})["result"]["items"];
    REQUIRE(a.size() == 1);
    CHECK(a[0]["insertText"] == "Assume that (${1:formula}).");
}

TEST_CASE("protocol errors") {
    CHECK(nlohmann::json::parse(server::handle_text("{nope"))["error"]["code"] == server::kParseError);
    CHECK(server::handle(json::array())["error"]["code"] == server::kInvalidRequest);
    CHECK(call("wp/nothing", json::object())["error"]["code"] == server::kMethodNotFound);
    CHECK(call("wp/check", json::object())["error"]["code"] == server::kInvalidParams);
    CHECK(call("wp/check", {{"docText", 3}})["error"]["code"] == server::kInvalidParams);
    CHECK(call("wp/check", {{"docText", "<input-area>\n"}})["error"]["code"] == server::kDocumentError);
    json lib = call("wp/check", {{"docText", ""}, {"libraryText", "#sort set\n#bogus\n"}});
    CHECK(lib["error"]["code"] == server::kLibraryError);
    CHECK(lib["error"]["span"]["startLine"] == 2);
    json goals = call("wp/goals", {{"docText", ""}});
    CHECK(goals["error"]["code"] == server::kInvalidParams);
}

TEST_CASE("stdio transport answers line by line") {
    std::istringstream in(
        "{\"jsonrpc\":\"2.0\",\"id\":1,\"method\":\"wp/version\"}\n"
        "\n"
        "garbage\n"
        "{\"jsonrpc\":\"2.0\",\"id\":2,\"method\":\"wp/complete\",\"params\":{\"prefix\":\"\\\\eps\"}}\n");
    std::ostringstream out;
    server::serve_stdio(in, out);
    std::istringstream lines(out.str());
    std::vector<json> responses;
    for (std::string l; std::getline(lines, l);) responses.push_back(json::parse(l));
    REQUIRE(responses.size() == 3);
    CHECK(responses[0]["id"] == 1);
    CHECK(responses[1]["error"]["code"] == server::kParseError);
    CHECK(responses[2]["result"]["items"][0]["insertText"] == "ε");
}

TEST_CASE("HTTP transport") {
    server::HttpServer srv;
    int port = srv.start("127.0.0.1", 0);
    REQUIRE(port > 0);
    httplib::Client client("127.0.0.1", port);
    json req = {{"jsonrpc", "2.0"}, {"id", "a"}, {"method", "wp/check"}, {"params", doc_params(testing::data_file("epsilon.wpd"))}};
    auto res = client.Post("/rpc", req.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    json body = json::parse(res->body);
    CHECK(body["id"] == "a");
    CHECK(body["result"]["units"][0]["complete"] == true);
    auto pre = client.Options("/rpc");
    REQUIRE(pre);
    CHECK(pre->get_header_value("Access-Control-Allow-Methods") == "POST");
    srv.stop();
}
