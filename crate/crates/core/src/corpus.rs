//! Corpus ingestion: occupations, job posts, pretrained-vector inputs,
//! taxonomy crosswalks, tokenization, discriminative-word selection and
//! weak RIASEC labeling of job posts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// The six vocational-interest dimensions, in canonical order.
///
/// Every fixed-length-six structure in this crate (profiles, grades,
/// predicted probability vectors, projection-matrix rows) is indexed in
/// this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    Realistic,
    Investigative,
    Artistic,
    Social,
    Enterprising,
    Conventional,
}

impl Dimension {
    pub const ALL: [Dimension; 6] = [
        Dimension::Realistic,
        Dimension::Investigative,
        Dimension::Artistic,
        Dimension::Social,
        Dimension::Enterprising,
        Dimension::Conventional,
    ];

    /// Position in the canonical order, 0..6.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Dimension> {
        Dimension::ALL.get(i).copied()
    }

    /// One-letter code: R, I, A, S, E or C.
    pub fn code(self) -> char {
        match self {
            Dimension::Realistic => 'R',
            Dimension::Investigative => 'I',
            Dimension::Artistic => 'A',
            Dimension::Social => 'S',
            Dimension::Enterprising => 'E',
            Dimension::Conventional => 'C',
        }
    }

    pub fn from_code(c: char) -> Option<Dimension> {
        Dimension::ALL.iter().copied().find(|d| d.code() == c)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// An interest profile: one score in [0, 100] per dimension, canonical order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiasecProfile {
    scores: [f64; 6],
}

impl RiasecProfile {
    /// Builds a profile, rejecting non-finite or out-of-range scores.
    pub fn new(scores: [f64; 6]) -> Result<RiasecProfile> {
        for (d, &s) in Dimension::ALL.iter().zip(scores.iter()) {
            if !s.is_finite() {
                return Err(Error::Invalid(format!("score {d} is not finite")));
            }
            if !(0.0..=100.0).contains(&s) {
                return Err(Error::Invalid(format!(
                    "score {d} = {s} outside [0, 100]"
                )));
            }
        }
        Ok(RiasecProfile { scores })
    }

    pub fn scores(&self) -> &[f64; 6] {
        &self.scores
    }

    pub fn score(&self, d: Dimension) -> f64 {
        self.scores[d.index()]
    }

    /// The highest-scored dimension; ties resolve to canonical order.
    pub fn top_dimension(&self) -> Dimension {
        let mut best = Dimension::Realistic;
        for d in Dimension::ALL {
            if self.scores[d.index()] > self.scores[best.index()] {
                best = d;
            }
        }
        best
    }

    /// Dimension-wise arithmetic mean. Returns `None` for an empty input.
    pub fn mean_of<'a>(profiles: impl IntoIterator<Item = &'a RiasecProfile>) -> Option<RiasecProfile> {
        let mut sum = [0.0f64; 6];
        let mut n = 0usize;
        for p in profiles {
            for (acc, s) in sum.iter_mut().zip(p.scores.iter()) {
                *acc += s;
            }
            n += 1;
        }
        if n == 0 {
            return None;
        }
        let mut mean = [0.0f64; 6];
        for (m, acc) in mean.iter_mut().zip(sum.iter()) {
            // Guard the [0, 100] invariant against summation round-off.
            *m = (acc / n as f64).clamp(0.0, 100.0);
        }
        Some(RiasecProfile { scores: mean })
    }
}

/// Lowercases and splits on runs of non-alphanumeric characters.
///
/// Deterministic; no stemming and no stopword removal. Empty input yields
/// an empty sequence.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// An occupation record: token sequences, similarity links and an optional
/// ground-truth profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Occupation {
    pub id: String,
    pub title_tokens: Vec<String>,
    pub desc_tokens: Vec<String>,
    pub similar_ids: BTreeSet<String>,
    pub profile: Option<RiasecProfile>,
}

impl Occupation {
    /// All tokens of the occupation (title followed by description).
    pub fn tokens(&self) -> impl Iterator<Item = &String> {
        self.title_tokens.iter().chain(self.desc_tokens.iter())
    }
}

/// A validated collection of occupations with unique ids and resolved
/// similarity links. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationSet {
    occupations: Vec<Occupation>,
    index: BTreeMap<String, usize>,
}

impl OccupationSet {
    /// Validates id uniqueness and that every similar-occupation link
    /// references an occupation in the set.
    pub fn new(occupations: Vec<Occupation>) -> Result<OccupationSet> {
        let mut index = BTreeMap::new();
        for (i, occ) in occupations.iter().enumerate() {
            if index.insert(occ.id.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate occupation id '{}'", occ.id)));
            }
        }
        let mut dangling = Vec::new();
        for occ in &occupations {
            for sim in &occ.similar_ids {
                if !index.contains_key(sim) {
                    dangling.push(format!("{} -> {}", occ.id, sim));
                }
            }
        }
        if !dangling.is_empty() {
            return Err(Error::Invalid(format!(
                "dangling similar_ids: {}",
                dangling.join(", ")
            )));
        }
        Ok(OccupationSet { occupations, index })
    }

    pub fn len(&self) -> usize {
        self.occupations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupations.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Occupation> {
        self.occupations.iter()
    }

    pub fn get(&self, id: &str) -> Option<&Occupation> {
        self.index.get(id).map(|&i| &self.occupations[i])
    }

    /// Occupations that carry a ground-truth profile.
    pub fn labeled(&self) -> impl Iterator<Item = &Occupation> {
        self.occupations.iter().filter(|o| o.profile.is_some())
    }
}

/// A job post: title/description tokens, an optional taxonomy code and an
/// optional weak profile derived from crosswalks.
#[derive(Debug, Clone, PartialEq)]
pub struct JobPost {
    pub id: String,
    pub title_tokens: Vec<String>,
    pub desc_tokens: Vec<String>,
    pub taxonomy_code: Option<String>,
    pub weak_profile: Option<RiasecProfile>,
}

/// A validated collection of job posts with unique ids.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSet {
    jobs: Vec<JobPost>,
}

impl JobSet {
    pub fn new(jobs: Vec<JobPost>) -> Result<JobSet> {
        let mut seen = BTreeSet::new();
        for job in &jobs {
            if !seen.insert(job.id.clone()) {
                return Err(Error::Invalid(format!("duplicate job id '{}'", job.id)));
            }
            if job.title_tokens.is_empty() && job.desc_tokens.is_empty() {
                return Err(Error::Invalid(format!(
                    "job '{}' has neither title nor description tokens",
                    job.id
                )));
            }
        }
        Ok(JobSet { jobs })
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &JobPost> {
        self.jobs.iter()
    }

    pub fn into_jobs(self) -> Vec<JobPost> {
        self.jobs
    }
}

/// A many-to-many code mapping between two taxonomies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Crosswalk {
    mapping: BTreeMap<String, BTreeSet<String>>,
}

impl Crosswalk {
    /// Builds a crosswalk from (source, target) pairs; duplicates collapse.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, String)>) -> Crosswalk {
        let mut mapping: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (src, dst) in pairs {
            mapping.entry(src).or_default().insert(dst);
        }
        Crosswalk { mapping }
    }

    pub fn targets(&self, source: &str) -> Option<&BTreeSet<String>> {
        self.mapping.get(source)
    }

    pub fn len(&self) -> usize {
        self.mapping.values().map(|t| t.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }
}

/// The discriminative vocabulary: selected words with their document
/// frequencies over the occupation corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    doc_freq: BTreeMap<String, usize>,
    n_docs: usize,
}

impl Vocabulary {
    pub fn contains(&self, word: &str) -> bool {
        self.doc_freq.contains_key(word)
    }

    pub fn words(&self) -> impl Iterator<Item = &String> {
        self.doc_freq.keys()
    }

    pub fn doc_freq(&self, word: &str) -> Option<usize> {
        self.doc_freq.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.doc_freq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doc_freq.is_empty()
    }

    /// Number of occupations the frequencies were counted over.
    pub fn n_docs(&self) -> usize {
        self.n_docs
    }
}

/// Selects words whose normalized document frequency is strictly below
/// `max_ndf`, where a document is one occupation and frequency counts
/// occupations whose tokens (title and description) contain the word.
pub fn select_discriminative_words(occs: &OccupationSet, max_ndf: f64) -> Result<Vocabulary> {
    if occs.is_empty() {
        return Err(Error::Invalid("cannot select words from an empty occupation set".into()));
    }
    if !max_ndf.is_finite() || !(0.0..=1.0).contains(&max_ndf) {
        return Err(Error::InvalidParameter(format!(
            "max_ndf must lie in [0, 1], got {max_ndf}"
        )));
    }
    let n = occs.len();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for occ in occs.iter() {
        let distinct: BTreeSet<&String> = occ.tokens().collect();
        for w in distinct {
            *counts.entry(w.clone()).or_insert(0) += 1;
        }
    }
    let doc_freq: BTreeMap<String, usize> = counts
        .into_iter()
        .filter(|(_, df)| (*df as f64 / n as f64) < max_ndf)
        .collect();
    Ok(Vocabulary { doc_freq, n_docs: n })
}

/// Follows an ordered crosswalk chain from `code`, collecting the set of
/// reachable terminal codes, and returns the unweighted dimension-wise mean
/// of their profiles.
///
/// Each reachable terminal code counts once regardless of how many paths
/// lead to it. Fails with [`Error::Unmapped`] when the chain dead-ends or
/// no terminal code has a profile.
pub fn derive_weak_profile(
    code: &str,
    chain: &[Crosswalk],
    target_profiles: &BTreeMap<String, RiasecProfile>,
) -> Result<RiasecProfile> {
    if chain.is_empty() {
        return Err(Error::InvalidParameter("crosswalk chain is empty".into()));
    }
    let mut current: BTreeSet<String> = BTreeSet::from([code.to_string()]);
    for xw in chain {
        current = current
            .iter()
            .filter_map(|c| xw.targets(c))
            .flatten()
            .cloned()
            .collect();
        if current.is_empty() {
            return Err(Error::Unmapped(code.to_string()));
        }
    }
    let profiles: Vec<&RiasecProfile> = current
        .iter()
        .filter_map(|c| target_profiles.get(c))
        .collect();
    RiasecProfile::mean_of(profiles).ok_or_else(|| Error::Unmapped(code.to_string()))
}

/// Assigns weak profiles to every job whose taxonomy code maps through the
/// chain; unmapped or code-less jobs stay unlabeled. Returns the labeled
/// set and the fraction of jobs labeled (1.0 for an empty set).
pub fn weak_label_jobs(
    jobs: JobSet,
    chain: &[Crosswalk],
    target_profiles: &BTreeMap<String, RiasecProfile>,
) -> Result<(JobSet, f64)> {
    if chain.is_empty() {
        return Err(Error::InvalidParameter("crosswalk chain is empty".into()));
    }
    let n = jobs.len();
    if n == 0 {
        return Ok((jobs, 1.0));
    }
    let mut labeled = 0usize;
    let mut out = jobs.into_jobs();
    for job in &mut out {
        if let Some(code) = &job.taxonomy_code {
            if let Ok(profile) = derive_weak_profile(code, chain, target_profiles) {
                job.weak_profile = Some(profile);
                labeled += 1;
            }
        }
    }
    Ok((JobSet::new(out)?, labeled as f64 / n as f64))
}

const OCC_HEADER: &str = "id\ttitle\tdescription\tR\tI\tA\tS\tE\tC\tsimilar_ids";

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_string(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Ids travel through whitespace- and semicolon-delimited formats, so they
/// must not contain either.
fn check_id(path: &Path, line: usize, id: &str) -> Result<()> {
    if id.is_empty() {
        return Err(Error::parse(path, line, "empty id"));
    }
    if id.chars().any(|c| c.is_whitespace() || c == ';') {
        return Err(Error::parse(
            path,
            line,
            format!("id '{id}' contains whitespace or ';'"),
        ));
    }
    Ok(())
}

fn parse_score_cells(path: &Path, line: usize, cells: &[&str]) -> Result<Option<RiasecProfile>> {
    let empty = cells.iter().filter(|c| c.is_empty()).count();
    if empty == cells.len() {
        return Ok(None);
    }
    if empty > 0 {
        return Err(Error::parse(
            path,
            line,
            "mixed empty and non-empty score cells; label all six dimensions or none",
        ));
    }
    let mut scores = [0.0f64; 6];
    for (slot, cell) in scores.iter_mut().zip(cells.iter()) {
        *slot = cell
            .parse::<f64>()
            .map_err(|_| Error::parse(path, line, format!("invalid score '{cell}'")))?;
    }
    let profile = RiasecProfile::new(scores)
        .map_err(|e| Error::parse(path, line, e.to_string()))?;
    Ok(Some(profile))
}

/// Loads an occupations TSV: one header row, then
/// `id  title  description  R  I  A  S  E  C  similar_ids` with
/// semicolon-separated similar ids and empty score cells meaning unlabeled.
pub fn load_occupations(path: &Path) -> Result<OccupationSet> {
    let contents = read_to_string(path)?;
    let mut lines = contents.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == OCC_HEADER => {}
        Some((_, header)) => {
            return Err(Error::parse(
                path,
                1,
                format!("bad header '{header}', expected '{OCC_HEADER}'"),
            ))
        }
        None => return Err(Error::parse(path, 1, "empty file")),
    }
    let mut occupations = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 10 {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected 10 tab-separated fields, found {}", fields.len()),
            ));
        }
        check_id(path, line_no, fields[0])?;
        let profile = parse_score_cells(path, line_no, &fields[3..9])?;
        let similar_ids: BTreeSet<String> = fields[9]
            .split(';')
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        occupations.push(Occupation {
            id: fields[0].to_string(),
            title_tokens: tokenize(fields[1]),
            desc_tokens: tokenize(fields[2]),
            similar_ids,
            profile,
        });
    }
    OccupationSet::new(occupations)
}

fn format_score(s: f64) -> String {
    // `{}` prints the shortest representation that parses back exactly.
    format!("{s}")
}

/// Writes an occupation set in the format accepted by [`load_occupations`].
/// Token sequences are written space-joined; reloading reproduces an equal
/// set because tokens are already lowercase alphanumeric.
pub fn save_occupations(occs: &OccupationSet, path: &Path) -> Result<()> {
    let mut out = String::from(OCC_HEADER);
    out.push('\n');
    for occ in occs.iter() {
        let scores = match &occ.profile {
            Some(p) => p.scores().iter().map(|&s| format_score(s)).collect::<Vec<_>>(),
            None => vec![String::new(); 6],
        };
        let similar: Vec<&str> = occ.similar_ids.iter().map(String::as_str).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            occ.id,
            occ.title_tokens.join(" "),
            occ.desc_tokens.join(" "),
            scores.join("\t"),
            similar.join(";"),
        ));
    }
    write_string(path, &out)
}

/// Loads a jobs TSV: `id  title  description  taxonomy_code`, no header,
/// empty code meaning none.
pub fn load_jobs(path: &Path) -> Result<JobSet> {
    let contents = read_to_string(path)?;
    let mut jobs = Vec::new();
    for (i, line) in contents.lines().enumerate() {
        let line_no = i + 1;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected 4 tab-separated fields, found {}", fields.len()),
            ));
        }
        check_id(path, line_no, fields[0])?;
        let title_tokens = tokenize(fields[1]);
        let desc_tokens = tokenize(fields[2]);
        if title_tokens.is_empty() && desc_tokens.is_empty() {
            return Err(Error::parse(
                path,
                line_no,
                "job has neither title nor description tokens",
            ));
        }
        jobs.push(JobPost {
            id: fields[0].to_string(),
            title_tokens,
            desc_tokens,
            taxonomy_code: if fields[3].is_empty() {
                None
            } else {
                Some(fields[3].to_string())
            },
            weak_profile: None,
        });
    }
    JobSet::new(jobs)
}

/// Loads a crosswalk TSV: `source_code  target_code`, one pair per row,
/// no header. Duplicate pairs collapse.
pub fn load_crosswalk(path: &Path) -> Result<Crosswalk> {
    let contents = read_to_string(path)?;
    let mut pairs = Vec::new();
    for (i, line) in contents.lines().enumerate() {
        let line_no = i + 1;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected 2 tab-separated fields, found {}", fields.len()),
            ));
        }
        if fields[0].is_empty() || fields[1].is_empty() {
            return Err(Error::parse(path, line_no, "empty code"));
        }
        pairs.push((fields[0].to_string(), fields[1].to_string()));
    }
    Ok(Crosswalk::from_pairs(pairs))
}

/// Loads a target-profiles TSV: `code  R  I  A  S  E  C`, no header,
/// all six scores required.
pub fn load_target_profiles(path: &Path) -> Result<BTreeMap<String, RiasecProfile>> {
    let contents = read_to_string(path)?;
    let mut profiles = BTreeMap::new();
    for (i, line) in contents.lines().enumerate() {
        let line_no = i + 1;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 7 {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected 7 tab-separated fields, found {}", fields.len()),
            ));
        }
        if fields[0].is_empty() {
            return Err(Error::parse(path, line_no, "empty code"));
        }
        let profile = parse_score_cells(path, line_no, &fields[1..7])?
            .ok_or_else(|| Error::parse(path, line_no, "target profile must have all six scores"))?;
        if profiles.insert(fields[0].to_string(), profile).is_some() {
            return Err(Error::parse(
                path,
                line_no,
                format!("duplicate code '{}'", fields[0]),
            ));
        }
    }
    Ok(profiles)
}
