use std::path::{Path, PathBuf};

/// Diagrams shipped with the tool, by file name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("ex-3-9-cover.osd", include_str!("../../../corpus/ex-3-9-cover.osd")),
    ("ex-3-9-order3.osd", include_str!("../../../corpus/ex-3-9-order3.osd")),
    ("ex-4-10-cover.osd", include_str!("../../../corpus/ex-4-10-cover.osd")),
    ("ex-4-10-order5.osd", include_str!("../../../corpus/ex-4-10-order5.osd")),
    ("ex-exam2-cover2.osd", include_str!("../../../corpus/ex-exam2-cover2.osd")),
    ("ex-exam2-cover3.osd", include_str!("../../../corpus/ex-exam2-cover3.osd")),
    ("ex-exam2-order3.osd", include_str!("../../../corpus/ex-exam2-order3.osd")),
    ("ex-perm-8.osd", include_str!("../../../corpus/ex-perm-8.osd")),
];

pub const ENV_VAR: &str = "ORBIDIM_CORPUS_DIR";

/// Where corpus files come from: the bundled copies, or a directory named
/// by `ORBIDIM_CORPUS_DIR`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Corpus {
    Bundled,
    Dir(PathBuf),
}

impl Corpus {
    pub fn from_env() -> Corpus {
        match std::env::var_os(ENV_VAR) {
            Some(dir) if !dir.is_empty() => Corpus::Dir(PathBuf::from(dir)),
            _ => Corpus::Bundled,
        }
    }

    /// File names in sorted order.
    pub fn list(&self) -> std::io::Result<Vec<String>> {
        match self {
            Corpus::Bundled => Ok(BUNDLED.iter().map(|(n, _)| n.to_string()).collect()),
            Corpus::Dir(dir) => {
                let mut names: Vec<String> = std::fs::read_dir(dir)?
                    .filter_map(Result::ok)
                    .map(|e| e.file_name().to_string_lossy().into_owned())
                    .filter(|n| n.ends_with(".osd"))
                    .collect();
                names.sort();
                Ok(names)
            }
        }
    }

    pub fn read(&self, name: &str) -> std::io::Result<String> {
        match self {
            Corpus::Bundled => BUNDLED
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, t)| t.to_string())
                .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::NotFound, format!("no corpus file {name}"))),
            Corpus::Dir(dir) => std::fs::read_to_string(dir.join(name)),
        }
    }

    /// Reads a path if it exists, else a corpus file of that name, with or
    /// without the `.osd` extension.
    pub fn resolve(&self, arg: &str) -> std::io::Result<String> {
        if Path::new(arg).is_file() {
            return std::fs::read_to_string(arg);
        }
        match self.read(arg) {
            Err(e) if !arg.ends_with(".osd") => self.read(&format!("{arg}.osd")).map_err(|_| e),
            r => r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_names_are_sorted_and_resolvable() {
        let names = Corpus::Bundled.list().unwrap();
        assert!(names.windows(2).all(|w| w[0] < w[1]));
        for name in &names {
            let stem = name.trim_end_matches(".osd");
            assert_eq!(Corpus::Bundled.resolve(stem).unwrap(), Corpus::Bundled.resolve(name).unwrap());
        }
        assert!(Corpus::Bundled.resolve("ex-perm-8.osd.osd").is_err());
    }
}
