#pragma once

// Completion backends. Every call is a single-turn prompt -> text exchange.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepmath/errors.hpp"

namespace stepmath {

struct CompletionRequest {
    std::string prompt;
    std::string model_name;
    double temperature = 0.0;
    std::optional<int> max_output_tokens;
    std::chrono::milliseconds timeout{120'000};
    /// Caller-chosen correlation key (the benchmark uses the record id).
    std::string tag;

    void validate() const {
        if (prompt.empty()) throw Error("completion prompt must not be empty");
        if (temperature < 0.0) throw Error("temperature must be >= 0");
    }
};

struct Transcript {
    CompletionRequest request;
    std::string raw_response;
    std::chrono::milliseconds latency{0};
    int retry_count = 0;
    std::map<std::string, std::string> provider_metadata;
};

/// Latency is the only non-deterministic field; callers that need byte-stable
/// output leave it out.
inline nlohmann::json to_json(const Transcript& t, bool include_latency = true) {
    nlohmann::json j{{"model", t.request.model_name},
                     {"temperature", t.request.temperature},
                     {"tag", t.request.tag},
                     {"prompt", t.request.prompt},
                     {"raw_response", t.raw_response},
                     {"retry_count", t.retry_count},
                     {"provider_metadata", t.provider_metadata}};
    if (t.request.max_output_tokens) j["max_output_tokens"] = *t.request.max_output_tokens;
    if (include_latency) j["latency_ms"] = t.latency.count();
    return j;
}

class CompletionBackend {
public:
    virtual ~CompletionBackend() = default;

    /// Blocking single completion. Must be safe to call from several threads.
    virtual Transcript complete(const CompletionRequest& request) = 0;
};

// ---------------------------------------------------------------------------
// Mock
// ---------------------------------------------------------------------------

/// Scripted failure for the mock backend.
enum class MockFailure { Transport, Auth, Empty };

using MockResponse = std::variant<std::string, MockFailure>;

/// Replays scripted responses in order. Requests whose tag has its own queue
/// consume from it; everything else consumes from the shared queue.
class MockBackend final : public CompletionBackend {
public:
    MockBackend() = default;
    explicit MockBackend(std::vector<std::string> script) {
        for (auto& s : script) shared_.emplace_back(std::move(s));
    }

    void push(MockResponse response) {
        std::lock_guard lock(mu_);
        shared_.push_back(std::move(response));
    }

    void push_tagged(const std::string& tag, MockResponse response) {
        std::lock_guard lock(mu_);
        tagged_[tag].push_back(std::move(response));
    }

    /// Accepts a plain array of responses or {"responses": [...], "by_tag": {tag: [...]}}.
    /// A response is a string or {"error": "transport"|"auth"|"empty"}.
    static MockBackend from_json(const nlohmann::json& script) {
        MockBackend mock;
        auto to_response = [](const nlohmann::json& r) -> MockResponse {
            if (r.is_string()) return r.get<std::string>();
            if (r.is_object() && r.contains("error")) {
                const auto kind = r.at("error").get<std::string>();
                if (kind == "transport") return MockFailure::Transport;
                if (kind == "auth") return MockFailure::Auth;
                if (kind == "empty") return MockFailure::Empty;
                throw ParseError("unknown mock error kind '" + kind + "'");
            }
            throw ParseError("mock responses must be strings or {\"error\": ...} objects");
        };
        auto read_list = [&](const nlohmann::json& arr, auto&& sink) {
            if (!arr.is_array()) throw ParseError("mock script lists must be arrays");
            for (const auto& r : arr) sink(to_response(r));
        };
        if (script.is_array()) {
            read_list(script, [&](MockResponse r) { mock.push(std::move(r)); });
        } else if (script.is_object()) {
            if (script.contains("responses")) {
                read_list(script.at("responses"), [&](MockResponse r) { mock.push(std::move(r)); });
            }
            if (script.contains("by_tag")) {
                for (const auto& [tag, list] : script.at("by_tag").items()) {
                    read_list(list, [&](MockResponse r) { mock.push_tagged(tag, std::move(r)); });
                }
            }
        } else {
            throw ParseError("mock script must be an array or an object");
        }
        return mock;
    }

    MockBackend(MockBackend&& other) noexcept {
        std::lock_guard lock(other.mu_);
        shared_ = std::move(other.shared_);
        tagged_ = std::move(other.tagged_);
        calls_ = other.calls_.load();
    }

    Transcript complete(const CompletionRequest& request) override {
        request.validate();
        MockResponse response;
        {
            std::lock_guard lock(mu_);
            ++calls_;
            auto it = tagged_.find(request.tag);
            if (!request.tag.empty() && it != tagged_.end() && !it->second.empty()) {
                response = std::move(it->second.front());
                it->second.pop_front();
            } else if (!shared_.empty()) {
                response = std::move(shared_.front());
                shared_.pop_front();
            } else {
                throw ScriptExhaustedError("no scripted response left for request" +
                                           (request.tag.empty() ? "" : " '" + request.tag + "'"));
            }
        }
        if (const auto* failure = std::get_if<MockFailure>(&response)) {
            switch (*failure) {
                case MockFailure::Transport: throw TransportError("scripted transport failure", 0);
                case MockFailure::Auth: throw AuthError("scripted auth failure", 0);
                case MockFailure::Empty: throw EmptyResponseError("scripted empty response", 0);
            }
        }
        Transcript t;
        t.request = request;
        t.raw_response = std::get<std::string>(std::move(response));
        t.provider_metadata["provider"] = "mock";
        return t;
    }

    /// Number of complete() calls so far, including ones that failed.
    int call_count() const { return calls_.load(); }

    std::size_t remaining() const {
        std::lock_guard lock(mu_);
        std::size_t n = shared_.size();
        for (const auto& [_, q] : tagged_) n += q.size();
        return n;
    }

private:
    mutable std::mutex mu_;
    std::deque<MockResponse> shared_;
    std::map<std::string, std::deque<MockResponse>> tagged_;
    std::atomic<int> calls_{0};
};

// ---------------------------------------------------------------------------
// Retry policy
// ---------------------------------------------------------------------------

struct RetryPolicy {
    int max_retries = 3;
    std::chrono::milliseconds initial_backoff{500};
    double multiplier = 2.0;
    std::chrono::milliseconds max_backoff{8'000};

    std::chrono::milliseconds backoff(int retry) const {
        double ms = static_cast<double>(initial_backoff.count());
        for (int i = 0; i < retry; ++i) ms *= multiplier;
        ms = std::min(ms, static_cast<double>(max_backoff.count()));
        return std::chrono::milliseconds(static_cast<long long>(ms));
    }
};

enum class StatusClass { Ok, Retryable, Auth, BadRequest };

/// HTTP status classification; 408, 429 and 5xx are transient.
constexpr StatusClass classify_status(int status) {
    if (status >= 200 && status < 300) return StatusClass::Ok;
    if (status == 401 || status == 403) return StatusClass::Auth;
    if (status == 408 || status == 429 || status >= 500) return StatusClass::Retryable;
    return StatusClass::BadRequest;
}

}  // namespace stepmath
