// what-if HTTP service: skillsched-service [--host H] [--port P] [--instance FILE]
#include <csignal>
#include <iostream>

#include "CLI11.hpp"

#include "skillsched/io.hpp"
#include "skillsched/service.hpp"

namespace {
skillsched::WhatIfService* g_service = nullptr;
void on_signal(int) {
  if (g_service) g_service->stop();
}
}  // namespace

int main(int argc, char** argv) {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string instance;
  std::size_t cache = 128;

  CLI::App app{"What-if scheduling service", "skillsched-service"};
  app.add_option("--host", host, "Listen address");
  app.add_option("--port", port, "Listen port, 0 = any free port");
  app.add_option("--instance", instance, "Instance file loaded at startup");
  app.add_option("--cache", cache, "Cached solve payloads");
  CLI11_PARSE(app, argc, argv);

  skillsched::ServiceOptions options;
  options.cache_capacity = cache;
  skillsched::WhatIfService service(options);
  if (!instance.empty()) {
    try {
      service.load(skillsched::read_instance(instance).spec());
    } catch (const std::exception& e) {
      std::cerr << "cannot load " << instance << ": " << e.what() << '\n';
      return 2;
    }
  }
  const int bound = service.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ':' << port << '\n';
    return 2;
  }
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on http://" << host << ':' << bound << std::endl;
  service.listen();
  return 0;
}
