#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace waso::service {

struct Response {
  int status{200};
  std::string body;  // JSON
};

struct Session;

/// In-memory sessions behind a JSON request/response interface. Requests on
/// one session are serialised; different sessions run independently. With a
/// state directory every mutation is snapshotted to <dir>/<id>.json and the
/// snapshots are reloaded on construction.
///
/// Routes:
///   POST /sessions                 {graph|synthetic, config, scenario?}
///   GET  /sessions/{id}
///   GET  /sessions/{id}/graph
///   POST /sessions/{id}/solve
///   POST /sessions/{id}/rsvp       {node, status: confirmed|declined|pending}
///   POST /sessions/{id}/replan     {force?}
///   POST /sessions/{id}/evaluate   {members: [...]}
/// Errors come back as {code, message} with a 4xx status.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path state_dir = {});
  ~SessionStore();

  Response handle(std::string_view method, std::string_view path,
                  const std::string& body);

  std::size_t size() const;

 private:
  std::shared_ptr<Session> find(const std::string& id) const;
  Response create(const std::string& body);
  void persist(const Session& s) const;
  void load_snapshots();

  std::filesystem::path state_dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::atomic<std::uint64_t> next_id_{1};
};

/// Serves the store over HTTP until the process is stopped.
void serve(SessionStore& store, const std::string& host, int port);

}  // namespace waso::service
