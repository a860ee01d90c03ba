use std::fmt;

use super::{SrsError, Step, Word};

/// A reduction path `start -> ... -> end`; possibly empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: Word,
    pub steps: Vec<Step>,
}

impl Path {
    pub fn empty(start: Word) -> Path {
        Path {
            start,
            steps: Vec::new(),
        }
    }

    /// Builds a path, checking that consecutive steps chain.
    pub fn from_steps(start: Word, steps: Vec<Step>) -> Result<Path, SrsError> {
        let p = Path { start, steps };
        p.validate()?;
        Ok(p)
    }

    pub fn single(step: Step) -> Path {
        Path {
            start: step.source.clone(),
            steps: vec![step],
        }
    }

    pub fn end(&self) -> &Word {
        self.steps.last().map(|s| &s.target).unwrap_or(&self.start)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: Step) -> Result<(), SrsError> {
        if &step.source != self.end() {
            return Err(SrsError::NotChained {
                expected: self.end().to_string(),
                found: step.source.to_string(),
            });
        }
        self.steps.push(step);
        Ok(())
    }

    pub fn validate(&self) -> Result<(), SrsError> {
        let mut cur = &self.start;
        for s in &self.steps {
            if &s.source != cur {
                return Err(SrsError::NotChained {
                    expected: cur.to_string(),
                    found: s.source.to_string(),
                });
            }
            if s.instance.source() != s.source || s.instance.target() != s.target {
                return Err(SrsError::SourceMismatch {
                    word: s.source.to_string(),
                    instance: s.instance.to_string(),
                });
            }
            cur = &s.target;
        }
        Ok(())
    }

    pub fn then(&self, other: &Path) -> Result<Path, SrsError> {
        let mut p = self.clone();
        if other.start != *p.end() {
            return Err(SrsError::NotChained {
                expected: p.end().to_string(),
                found: other.start.to_string(),
            });
        }
        p.steps.extend(other.steps.iter().cloned());
        Ok(p)
    }

    pub fn whisker(&self, u: &Word, v: &Word) -> Path {
        Path {
            start: Word::concat3(u, &self.start, v),
            steps: self.steps.iter().map(|s| s.whisker(u, v)).collect(),
        }
    }

    /// Words visited, including the start.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.target))
    }

    pub fn render(&self, n: usize) -> String {
        if self.steps.is_empty() {
            return format!("{} (empty)", self.start.render(n));
        }
        let mut out = self.start.render(n);
        for s in &self.steps {
            out.push_str(&format!(" -[{}]-> {}", s.instance.render(n), s.target.render(n)));
        }
        out
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.words().map(|w| w.max_letter()).max().unwrap_or(0);
        f.write_str(&self.render(if n <= 9 { 9 } else { usize::MAX }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// A mixed-direction sequence of steps. A backward leg traverses its step
/// from target to source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zigzag {
    pub start: Word,
    pub legs: Vec<(Direction, Step)>,
}

impl Zigzag {
    pub fn new(start: Word, legs: Vec<(Direction, Step)>) -> Result<Zigzag, SrsError> {
        let z = Zigzag { start, legs };
        z.validate()?;
        Ok(z)
    }

    pub fn validate(&self) -> Result<(), SrsError> {
        let mut cur = self.start.clone();
        for (dir, s) in &self.legs {
            let (from, to) = match dir {
                Direction::Forward => (&s.source, &s.target),
                Direction::Backward => (&s.target, &s.source),
            };
            if *from != cur {
                return Err(SrsError::NotChained {
                    expected: cur.to_string(),
                    found: from.to_string(),
                });
            }
            cur = to.clone();
        }
        Ok(())
    }

    pub fn end(&self) -> Word {
        let mut cur = self.start.clone();
        for (dir, s) in &self.legs {
            cur = match dir {
                Direction::Forward => s.target.clone(),
                Direction::Backward => s.source.clone(),
            };
        }
        cur
    }

    pub fn from_path(p: &Path) -> Zigzag {
        Zigzag {
            start: p.start.clone(),
            legs: p
                .steps
                .iter()
                .map(|s| (Direction::Forward, s.clone()))
                .collect(),
        }
    }
}
