//! Hand-assembled `multipart/form-data` bodies for upload tests.

pub const BOUNDARY: &str = "kgatlas-test-boundary-7f3a";

pub struct Part<'a> {
    pub name: &'a str,
    pub file_name: Option<&'a str>,
    pub body: &'a [u8],
}

impl<'a> Part<'a> {
    pub fn text(name: &'a str, body: &'a str) -> Self {
        Part { name, file_name: None, body: body.as_bytes() }
    }

    pub fn file(name: &'a str, file_name: &'a str, body: &'a [u8]) -> Self {
        Part { name, file_name: Some(file_name), body }
    }
}

/// Content-Type header value matching [`body`].
pub fn content_type() -> String {
    format!("multipart/form-data; boundary={BOUNDARY}")
}

pub fn body(parts: &[Part<'_>]) -> Vec<u8> {
    let mut out = Vec::new();
    for part in parts {
        out.extend_from_slice(format!("--{BOUNDARY}\r\n").as_bytes());
        let disposition = match part.file_name {
            Some(f) => format!("Content-Disposition: form-data; name=\"{}\"; filename=\"{f}\"\r\n", part.name),
            None => format!("Content-Disposition: form-data; name=\"{}\"\r\n", part.name),
        };
        out.extend_from_slice(disposition.as_bytes());
        out.extend_from_slice(b"\r\n");
        out.extend_from_slice(part.body);
        out.extend_from_slice(b"\r\n");
    }
    out.extend_from_slice(format!("--{BOUNDARY}--\r\n").as_bytes());
    out
}

/// The Benghazi upload: data, format and the example sentence as `ex1`.
pub fn benghazi_upload() -> Vec<u8> {
    let rdf = crate::fixtures::read_fixture("benghazi.ttl");
    let text = crate::fixtures::read_fixture("example1.txt");
    body(&[
        Part::text("format", "turtle"),
        Part::file("rdf", "benghazi.ttl", rdf.as_bytes()),
        Part::file("document", "ex1.txt", text.as_bytes()),
    ])
}
