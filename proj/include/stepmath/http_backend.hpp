#pragma once

// Chat-completions client over HTTP(S). POSTs {base_url}/chat/completions with
// a single user message and reads choices[0].message.content.

#include <chrono>
#include <functional>
#include <string>
#include <thread>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#if __has_include(<openssl/ssl.h>) && defined(STEPMATH_WITH_OPENSSL)
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#endif
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "stepmath/backend.hpp"
#include "stepmath/errors.hpp"

namespace stepmath {

struct HttpBackendConfig {
    std::string base_url = "https://api.openai.com/v1";
    std::string api_key;
    RetryPolicy retry;
    std::function<void(std::chrono::milliseconds)> sleep = [](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
    };
};

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;    // no trailing slash
};

inline SplitUrl split_base_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error("base URL must start with http:// or https://: '" + url + "'");
    }
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") throw Error("unsupported URL scheme '" + scheme + "'");
    const auto path_start = url.find('/', scheme_end + 3);
    SplitUrl out;
    out.origin = url.substr(0, path_start);
    out.path = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
    return out;
}

class HttpBackend final : public CompletionBackend {
public:
    explicit HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
        url_ = split_base_url(config_.base_url);
    }

    Transcript complete(const CompletionRequest& request) override {
        request.validate();
        nlohmann::json body{{"model", request.model_name},
                            {"temperature", request.temperature},
                            {"messages", nlohmann::json::array(
                                             {{{"role", "user"}, {"content", request.prompt}}})}};
        if (request.max_output_tokens) body["max_tokens"] = *request.max_output_tokens;
        const std::string payload = body.dump();

        httplib::Headers headers;
        if (!config_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        }

        const auto started = std::chrono::steady_clock::now();
        std::string last_failure;
        for (int attempt = 0;; ++attempt) {
            // One client per attempt: httplib clients are not shared across threads.
            httplib::Client client(url_.origin);
            const auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
            const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
                request.timeout - secs);
            client.set_connection_timeout(secs.count(), usecs.count());
            client.set_read_timeout(secs.count(), usecs.count());
            client.set_write_timeout(secs.count(), usecs.count());

            auto res = client.Post(url_.path + "/chat/completions", headers, payload,
                                   "application/json");
            if (!res) {
                last_failure = "transport failure: " + httplib::to_string(res.error());
            } else {
                switch (classify_status(res->status)) {
                    case StatusClass::Ok:
                        return finish(request, res->body, attempt, started);
                    case StatusClass::Auth:
                        throw AuthError("authentication rejected (HTTP " +
                                            std::to_string(res->status) + ")",
                                        attempt);
                    case StatusClass::BadRequest:
                        throw RequestError("request rejected (HTTP " + std::to_string(res->status) +
                                               "): " + res->body.substr(0, 200),
                                           attempt);
                    case StatusClass::Retryable:
                        last_failure = "HTTP " + std::to_string(res->status);
                        break;
                }
            }
            if (attempt >= config_.retry.max_retries) {
                throw TransportError(last_failure + " after " + std::to_string(attempt) + " retries",
                                     attempt);
            }
            config_.sleep(config_.retry.backoff(attempt));
        }
    }

private:
    Transcript finish(const CompletionRequest& request, const std::string& body, int retries,
                      std::chrono::steady_clock::time_point started) const {
        auto doc = nlohmann::json::parse(body, nullptr, false);
        std::string content;
        if (!doc.is_discarded() && doc.contains("choices") && doc["choices"].is_array() &&
            !doc["choices"].empty()) {
            const auto& choice = doc["choices"][0];
            if (choice.contains("message") && choice["message"].contains("content") &&
                choice["message"]["content"].is_string()) {
                content = choice["message"]["content"].get<std::string>();
            }
        }
        if (content.empty()) throw EmptyResponseError("provider returned no completion text", retries);

        Transcript t;
        t.request = request;
        t.raw_response = std::move(content);
        t.retry_count = retries;
        t.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started);
        t.provider_metadata["provider"] = "http";
        if (doc.contains("id") && doc["id"].is_string()) t.provider_metadata["id"] = doc["id"];
        if (doc.contains("model") && doc["model"].is_string()) {
            t.provider_metadata["model"] = doc["model"];
        }
        const auto& choice = doc["choices"][0];
        if (choice.contains("finish_reason") && choice["finish_reason"].is_string()) {
            t.provider_metadata["finish_reason"] = choice["finish_reason"];
        }
        if (doc.contains("usage") && doc["usage"].is_object()) {
            for (const auto& [k, v] : doc["usage"].items()) {
                if (v.is_number_integer()) t.provider_metadata["usage." + k] = std::to_string(v.get<long long>());
            }
        }
        return t;
    }

    HttpBackendConfig config_;
    SplitUrl url_;
};

}  // namespace stepmath
