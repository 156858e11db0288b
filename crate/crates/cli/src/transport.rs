use std::time::Duration;

use tribokit::oeis::{SequenceId, Transport};

/// Fetches `{endpoint}/{id}/b{digits}.txt` over HTTP.
#[derive(Debug, Clone)]
pub struct HttpTransport {
    endpoint: String,
    timeout: Duration,
}

impl HttpTransport {
    pub fn new(endpoint: impl Into<String>) -> Self {
        HttpTransport {
            endpoint: endpoint.into().trim_end_matches('/').to_string(),
            timeout: Duration::from_secs(20),
        }
    }

    pub fn url(&self, id: &SequenceId) -> String {
        format!("{}/{}/{}", self.endpoint, id, id.bfile_name())
    }
}

impl Transport for HttpTransport {
    fn fetch(&self, id: &SequenceId) -> Result<String, String> {
        let agent = ureq::AgentBuilder::new().timeout(self.timeout).build();
        agent
            .get(&self.url(id))
            .call()
            .map_err(|e| e.to_string())?
            .into_string()
            .map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_bfile_url() {
        let t = HttpTransport::new("https://oeis.org/");
        let id: SequenceId = "A001644".parse().unwrap();
        assert_eq!(t.url(&id), "https://oeis.org/A001644/b001644.txt");
    }
}
