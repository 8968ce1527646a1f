// Copyright 2026 The bogrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bogrid/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include "bogrid/error.hpp"
#include "bogrid/generator.hpp"
#include "bogrid/option_grid.hpp"

namespace bogrid {
namespace {

using nlohmann::ordered_json;

ServiceResponse json_response(int status, const ordered_json& j) { return {status, j.dump() + "\n"}; }

ServiceResponse error_response(int status, const std::string& code, const std::string& message) {
  ordered_json j;
  j["error"] = code;
  j["message"] = message;
  return json_response(status, j);
}

ordered_json cross_out_json(const CrossOutMap& map) {
  ordered_json j = ordered_json::object();
  for (const OptionRow& row : OptionGrid::builtin().rows()) j[row.key] = map.at(row.key);
  return j;
}

// Reads {"selection": {row: value, ...}}; unset rows take defaults.
Selection read_selection(std::string_view body) {
  const ordered_json doc = ordered_json::parse(body);
  if (!doc.is_object() || !doc.contains("selection") || !doc.at("selection").is_object()) {
    throw Error(ErrorCode::kUnknownOption, "body must be {\"selection\": {...}}");
  }
  Selection partial;
  for (const auto& [key, value] : doc.at("selection").items()) {
    if (!value.is_string()) throw Error(ErrorCode::kUnknownOption, "value of '" + key + "' must be a string");
    partial[key] = value.get<std::string>();
  }
  return OptionGrid::builtin().with_defaults(partial);
}

ServiceResponse render_endpoint(std::string_view body) {
  const OptionGrid& grid = OptionGrid::builtin();
  const Selection selection = read_selection(body);
  const Compatibility compat = grid.is_compatible(selection);
  if (!compat.ok()) {
    ordered_json j;
    j["error"] = "incompatible";
    ordered_json failed = ordered_json::array();
    for (const CompatRule* rule : compat.failed) {
      failed.push_back({{"id", rule->id},
                        {"classification", std::string(to_string(rule->classification))},
                        {"reason", rule->reason}});
    }
    j["failed_rules"] = std::move(failed);
    j["cross_out_map"] = cross_out_json(grid.cross_out_map(selection));
    return json_response(422, j);
  }
  const GenerationResult gen = generate(selection);
  ordered_json j;
  j["script"] = gen.script;
  j["digest"] = gen.digest;
  return json_response(200, j);
}

}  // namespace

ServiceResponse handle_request(std::string_view method, std::string_view path, std::string_view body) {
  try {
    if (method == "GET" && path == "/health") return json_response(200, {{"status", "ok"}});
    if (method == "GET" && path == "/options") {
      return {200, std::string(OptionGrid::builtin_json())};
    }
    if (method == "POST" && path == "/render") return render_endpoint(body);
    if (method == "POST" && path == "/crossout") {
      const Selection selection = read_selection(body);
      ordered_json j;
      j["cross_out_map"] = cross_out_json(OptionGrid::builtin().cross_out_map(selection));
      return json_response(200, j);
    }
    return error_response(404, "not_found", "no endpoint " + std::string(method) + " " + std::string(path));
  } catch (const ordered_json::exception& e) {
    return error_response(400, "malformed_body", e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUnknownOption || e.code() == ErrorCode::kIncompleteSelection) {
      return error_response(400, std::string(to_string(e.code())), e.what());
    }
    return error_response(500, std::string(to_string(e.code())), e.what());
  }
}

struct Server::Impl {
  httplib::Server server;
};

Server::Server() : impl_(std::make_unique<Impl>()) {
  auto route = [](const httplib::Request& req, httplib::Response& res) {
    const ServiceResponse r = handle_request(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  impl_->server.Get("/health", route);
  impl_->server.Get("/options", route);
  impl_->server.Post("/render", route);
  impl_->server.Post("/crossout", route);
  impl_->server.Get(".*", route);
  impl_->server.Post(".*", route);
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Server::listen_after_bind() { return impl_->server.listen_after_bind(); }

void Server::stop() { impl_->server.stop(); }

}  // namespace bogrid
