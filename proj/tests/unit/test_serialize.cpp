#include <doctest.h>

#include "chromatic/error.hpp"
#include "chromatic/scenarios.hpp"
#include "chromatic/serialize.hpp"

using namespace chromatic;

TEST_CASE("complex JSON round trip") {
  for (const char* name : {"ub1", "is1", "tas1+partial"}) {
    auto p = build_scenario(name, default_agents(3));
    auto j = complex_to_json(p);
    CHECK(complex_from_json(j) == p);
    CHECK(dump(complex_to_json(complex_from_json(Json::parse(dump(j))))) == dump(j));
  }
  auto pu = product_update(make_task("majority0", default_agents(3)));
  CHECK(complex_from_json(complex_to_json(pu)) == pu);
  auto m = muddy_children_complex(3);
  auto j = complex_to_json(m);
  CHECK_FALSE(j.contains("carrier"));
  CHECK(complex_from_json(j) == m);
}

TEST_CASE("complex JSON layout") {
  auto j = complex_to_json(binary_input_complex({"a", "b"}));
  CHECK(j["agents"] == Json::array({"a", "b"}));
  CHECK(j["vertices"][0] == Json{{"id", "a_0"}, {"color", "a"}, {"state", "a:0"}});
  CHECK(j["facets"][3] == Json::array({"a_1", "b_1"}));
}

TEST_CASE("malformed complex documents") {
  auto code = [](const std::string& text) {
    try {
      complex_from_json(Json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::EmptyModel;
  };
  CHECK(code("{}") == ErrorCode::MalformedInput);
  CHECK(code(R"({"agents":["a"],"vertices":[{"id":"x","color":"a"}],"facets":[]})") == ErrorCode::MalformedInput);
  CHECK(code(R"({"agents":["a"],"vertices":[{"id":"x","color":"a","state":"a:0"}],"facets":[["x"]],"carrier":{"0":1,"1":0}})") ==
        ErrorCode::UnknownFacet);
  CHECK(code(R"({"agents":["a"],"vertices":[{"id":"x","color":"a","state":"a:0"}],"facets":[["x"]],"carrier":{}})") ==
        ErrorCode::MissingCarrier);
  CHECK(code(R"({"agents":["a"],"vertices":[{"id":"x","color":"a","state":"a:0"}],"facets":[["y"]]})") ==
        ErrorCode::DanglingVertexRef);
  CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"agents":["a"],"vertices":[{"id":"x","color":"a","state":"a["}],"facets":[["x"]]})")),
                  SyntaxError);
}

TEST_CASE("decision maps and certificates") {
  const auto agents = default_agents(3);
  auto p = build_scenario("ub1", agents);
  auto r = search_decision_map(make_task("majority0", agents), p);
  REQUIRE(r.map);
  auto j = decision_map_to_json(p, *r.map);
  CHECK(j.size() == p.vertices().size());
  CHECK(decision_map_from_json(p, j) == *r.map);
  j.erase(p.vertex(0).id);
  CHECK_THROWS_AS(decision_map_from_json(p, j), Error);

  SearchResult none;
  none.nodes_explored = 12;
  CHECK(certificate_to_json(none) == Json{{"verdict", "unsolvable"}, {"nodesExplored", 12}});
}

TEST_CASE("obstruction report JSON mirrors the report") {
  const auto agents = default_agents(3);
  auto p = build_scenario("is1", agents);
  auto r = check_obstruction(make_task("majority0", agents), p, not_all_common_distributed(agents, 1), 0);
  auto j = obstruction_to_json(r);
  CHECK(j["verdict"] == "obstruction-confirmed");
  CHECK(j["positivityOk"] == true);
  CHECK(j["falseAtWitness"] == true);
  CHECK(j["trueAtAllImages"] == true);
  CHECK(j["witnessWorld"] == 0);
}

TEST_CASE("frame JSON round trip") {
  auto f = complex_to_frame(muddy_children_complex(3));
  auto back = frame_from_json(frame_to_json(f));
  CHECK(back.worlds() == f.worlds());
  for (AgentIndex a = 0; a < 3; ++a) CHECK(back.generators(a) == f.generators(a));
  auto loaded = frame_from_json(Json::parse(R"({"worlds":["w1","w2","w3"],"relations":{"a":[["w1","w2"]],"b":[["w1","w2"]],"c":[["w2","w3"]]}})"));
  CHECK(loaded.agents() == std::vector<std::string>{"a", "b", "c"});
  CHECK(frame_to_complex(loaded).vertices().size() == 6);
}

TEST_CASE("DOT export of the dual graph") {
  auto c = build_complex({"a", "b", "c"},
                         {{"a1", "a", LocalState::initial("a", 1), {}},
                          {"a2", "a", LocalState::initial("a", 2), {}},
                          {"b1", "b", LocalState::initial("b", 1), {}},
                          {"b2", "b", LocalState::initial("b", 2), {}},
                          {"c1", "c", LocalState::initial("c", 1), {}},
                          {"c2", "c", LocalState::initial("c", 2), {}}},
                         {{"a1", "b1", "c1"}, {"a1", "b1", "c2"}, {"a2", "b2", "c2"}});
  CHECK(complex_to_dot(c) ==
        "graph dual {\n"
        "  w0 [label=\"a1 b1 c1\"];\n"
        "  w1 [label=\"a1 b1 c2\"];\n"
        "  w2 [label=\"a2 b2 c2\"];\n"
        "  w0 -- w1 [label=\"a,b\"];\n"
        "  w1 -- w2 [label=\"c\"];\n"
        "}\n");
}
