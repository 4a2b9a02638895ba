use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::Value;
use sutra_core::{build_comparison, BuildOptions, Operation};
use sutra_service::{router, ServiceConfig};
use tower::ServiceExt;

async fn call(method: Method, uri: &str, body: Option<&str>) -> (StatusCode, Option<String>, Vec<u8>) {
    let mut req = Request::builder().method(method).uri(uri);
    if body.is_some() {
        req = req.header(header::CONTENT_TYPE, "application/json");
    }
    let req = req
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_owned())))
        .unwrap();
    let resp = router(ServiceConfig::default()).oneshot(req).await.unwrap();
    let status = resp.status();
    let content_type = resp
        .headers()
        .get(header::CONTENT_TYPE)
        .map(|v| v.to_str().unwrap().to_owned());
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, content_type, bytes)
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap()
}

#[tokio::test]
async fn health() {
    let (status, ct, body) = call(Method::GET, "/api/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ct.as_deref(), Some("application/json"));
    assert_eq!(body, br#"{"status":"ok"}"#);
}

#[tokio::test]
async fn methods_listing_is_stable() {
    let (status, ct, first) = call(Method::GET, "/api/methods", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ct.as_deref(), Some("application/json"));
    let (_, _, second) = call(Method::GET, "/api/methods", None).await;
    assert_eq!(first, second);
    let list = json(&first);
    let list = list.as_array().unwrap();
    assert_eq!(list.len(), 8);
    for m in list {
        assert!(!m["infoText"].as_str().unwrap().is_empty());
    }
}

#[tokio::test]
async fn describe_known_and_unknown() {
    let (status, _, body) = call(Method::GET, "/api/methods/vedic.sqrt.duplex", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(json(&body)["id"], "vedic.sqrt.duplex");

    let (status, ct, body) = call(Method::GET, "/api/methods/nosuch", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(ct.as_deref(), Some("application/json"));
    assert_eq!(json(&body)["code"], "UNKNOWN_METHOD");
}

#[tokio::test]
async fn trace_multiply() {
    let (status, _, body) = call(
        Method::POST,
        "/api/trace",
        Some(r#"{"operation":"multiply","operands":["12","34"]}"#),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let v = json(&body);
    assert_eq!(v["vedic"]["result"], "408");
    assert_eq!(v["traditional"]["result"], "408");
    let ops = ["12".parse().unwrap(), "34".parse().unwrap()];
    let expected = build_comparison(Operation::Multiply, &ops, &BuildOptions::default())
        .unwrap()
        .to_canonical_bytes();
    assert_eq!(body, expected);
}

#[tokio::test]
async fn trace_options_latent_display() {
    let (status, _, body) = call(
        Method::POST,
        "/api/trace",
        Some(r#"{"operation":"add","operands":["0","7"],"options":{"latentDisplay":"both"}}"#),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(json(&body)["vedic"]["latentDisplay"], "both");
}

#[tokio::test]
async fn trace_negative_result_is_422() {
    let (status, _, body) = call(
        Method::POST,
        "/api/trace",
        Some(r#"{"operation":"subtract","operands":["123","456"]}"#),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let v = json(&body);
    assert_eq!(v["code"], "NEGATIVE_RESULT");
    assert_eq!(v["warnings"][0]["code"], "NEGATIVE_RESULT");
    assert_eq!(v["warnings"][0]["blocking"], true);
}

#[tokio::test]
async fn trace_arity_and_length_are_422() {
    let (status, _, body) = call(Method::POST, "/api/trace", Some(r#"{"operation":"sqrt","operands":["4","9"]}"#)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(json(&body)["code"], "ARITY");

    let long = "1".repeat(51);
    let body = format!(r#"{{"operation":"add","operands":["{long}","1"]}}"#);
    let (status, _, body) = call(Method::POST, "/api/trace", Some(&body)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(json(&body)["code"], "OPERAND_TOO_LONG");
}

#[tokio::test]
async fn max_digits_option_only_tightens() {
    let (status, _, body) = call(
        Method::POST,
        "/api/trace",
        Some(r#"{"operation":"sqrt","operands":["123"],"options":{"maxDigits":2}}"#),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(json(&body)["code"], "OPERAND_TOO_LONG");

    let long = "1".repeat(60);
    let body = format!(r#"{{"operation":"sqrt","operands":["{long}"],"options":{{"maxDigits":999}}}}"#);
    let (status, _, body) = call(Method::POST, "/api/trace", Some(&body)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(json(&body)["code"], "OPERAND_TOO_LONG");
}

#[tokio::test]
async fn bad_requests_are_400() {
    for body in [
        r#"{"operation":"sqrt","operands":["-4"]}"#,
        r#"{"operation":"sqrt","operands":["4.0"]}"#,
        r#"{"operation":"divide","operands":["4","2"]}"#,
        r#"{"operation":"sqrt"}"#,
        r#"{"operation":"sqrt","operands":["4"],"options":{"maxDigits":-1}}"#,
        r#"{"operation":"sqrt","operands":["4"],"options":{"colour":"red"}}"#,
        "not json",
    ] {
        let (status, ct, resp) = call(Method::POST, "/api/trace", Some(body)).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
        assert_eq!(ct.as_deref(), Some("application/json"));
        assert!(json(&resp)["code"].is_string());
    }
    let (_, _, resp) = call(Method::POST, "/api/trace", Some(r#"{"operation":"sqrt","operands":["-4"]}"#)).await;
    let v = json(&resp);
    assert_eq!(v["code"], "PARSE_ERROR");
    assert_eq!(v["details"]["position"], 0);
}

#[tokio::test]
async fn cors_headers_present() {
    let req = Request::builder()
        .method(Method::GET)
        .uri("/api/health")
        .header(header::ORIGIN, "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let resp = router(ServiceConfig::default()).oneshot(req).await.unwrap();
    assert_eq!(
        resp.headers().get(header::ACCESS_CONTROL_ALLOW_ORIGIN).unwrap(),
        "*"
    );
}

#[tokio::test]
async fn concurrent_requests_are_independent() {
    let app = router(ServiceConfig::default());
    let mut handles = Vec::new();
    for i in 0..32u32 {
        let app = app.clone();
        handles.push(tokio::spawn(async move {
            let body = format!(r#"{{"operation":"multiply","operands":["{i}","{}"]}}"#, i + 7);
            let req = Request::builder()
                .method(Method::POST)
                .uri("/api/trace")
                .body(Body::from(body))
                .unwrap();
            let resp = app.oneshot(req).await.unwrap();
            let bytes = resp.into_body().collect().await.unwrap().to_bytes();
            (i, json(&bytes)["vedic"]["result"].as_str().unwrap().to_owned())
        }));
    }
    for h in handles {
        let (i, result) = h.await.unwrap();
        assert_eq!(result, (i * (i + 7)).to_string());
    }
}
