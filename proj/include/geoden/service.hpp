#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "geoden/region_store.hpp"
#include "geoden/snapshot.hpp"

namespace httplib {
class Server;
}

namespace geoden {

struct ApiRequest {
    std::string method;
    std::string path;
    std::multimap<std::string, std::string> params;
    std::string body;
    std::optional<std::string> if_match;  // optional base version for PUT /api/regions
};

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// JSON API over a swappable immutable snapshot. Query handling is stateless;
/// the region store is the only mutable state.
class Service {
public:
    explicit Service(std::shared_ptr<RegionStore> store = std::make_shared<RegionStore>());

    /// Readers in flight keep the snapshot they started with.
    void set_snapshot(std::shared_ptr<const Snapshot> snapshot);
    std::shared_ptr<const Snapshot> snapshot() const;

    RegionStore& regions() { return *store_; }

    ApiResponse handle(const ApiRequest& request) const;

private:
    ApiResponse query(const std::string& kind, const std::string& body) const;
    ApiResponse get_regions() const;
    ApiResponse put_regions(const ApiRequest& request) const;
    ApiResponse suitability(const ApiRequest& request) const;

    std::shared_ptr<RegionStore> store_;
    mutable std::mutex snapshot_mutex_;
    std::shared_ptr<const Snapshot> snapshot_;
};

/// cpp-httplib front end: routes /api/* to a Service and serves static assets.
class HttpServer {
public:
    HttpServer(Service& service, std::optional<std::filesystem::path> static_dir = std::nullopt);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds; port 0 picks an ephemeral port. Returns the bound port, or -1.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    bool listen();
    void stop();
    void wait_until_ready() const;

private:
    Service& service_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace geoden
