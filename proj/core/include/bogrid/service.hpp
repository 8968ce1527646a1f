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

#ifndef BOGRID_SERVICE_HPP_
#define BOGRID_SERVICE_HPP_

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace bogrid {

struct ServiceResponse {
  int status = 200;
  std::string body;  // application/json
};

/// Stateless request handling behind the HTTP endpoints:
///   GET /options, GET /health, POST /render, POST /crossout.
ServiceResponse handle_request(std::string_view method, std::string_view path, std::string_view body);

class Server {
 public:
  Server();
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  bool listen_after_bind();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bogrid

#endif  // BOGRID_SERVICE_HPP_
