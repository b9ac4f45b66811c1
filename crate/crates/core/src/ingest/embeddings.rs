//! Word-embedding tables and the word2vec binary format.
//!
//! The binary layout is an ASCII header `"<vocab_size> <dim>\n"` followed by
//! one entry per word: the word bytes, a single space, then `dim` 32-bit
//! little-endian IEEE-754 values. A newline may separate entries; leading
//! whitespace before a word is skipped.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::{Error, Result};

/// Pretrained term vectors, all of one dimension.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: HashMap<String, Vec<f32>>,
}

impl EmbeddingTable {
    /// Build from (term, vector) pairs; rejects any vector whose length
    /// differs from `dim`.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (String, Vec<f32>)>) -> Result<Self> {
        let mut vectors = HashMap::new();
        for (term, v) in entries {
            if v.len() != dim {
                return Err(Error::EmbeddingFormat {
                    offset: 0,
                    reason: format!("entry `{term}` has length {}, expected {dim}", v.len()),
                });
            }
            vectors.insert(term, v);
        }
        Ok(Self { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, term: &str) -> Option<&[f32]> {
        self.vectors.get(term).map(Vec::as_slice)
    }

    pub fn contains(&self, term: &str) -> bool {
        self.vectors.contains_key(term)
    }

    /// Read a word2vec binary stream.
    pub fn read_word2vec(reader: impl Read) -> Result<Self> {
        let mut reader = CountingReader::new(BufReader::new(reader));

        let header = reader.read_line_ascii()?;
        let mut parts = header.split_whitespace();
        let (vocab_size, dim) = match (parts.next(), parts.next(), parts.next()) {
            (Some(v), Some(d), None) => {
                let v: usize = v.parse().map_err(|_| reader.format_err("bad vocab size"))?;
                let d: usize = d.parse().map_err(|_| reader.format_err("bad dimension"))?;
                (v, d)
            }
            _ => return Err(reader.format_err("header must be `<vocab_size> <dim>`")),
        };
        if dim == 0 {
            return Err(reader.format_err("zero dimension"));
        }

        let mut vectors = HashMap::with_capacity(vocab_size);
        let mut float_buf = vec![0u8; dim * 4];
        for i in 0..vocab_size {
            let word = reader
                .read_word()?
                .ok_or_else(|| reader.format_err(&format!("truncated: {i} of {vocab_size} entries read")))?;
            reader.read_exact_or(&mut float_buf, || {
                format!("truncated vector for entry {i} (`{word}`)")
            })?;
            let vector: Vec<f32> = float_buf
                .chunks_exact(4)
                .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
                .collect();
            vectors.insert(word, vector);
        }
        Ok(Self { dim, vectors })
    }

    /// Load a word2vec binary file.
    pub fn load_word2vec(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_word2vec(file)
    }

    /// Write the table in word2vec binary form; terms are sorted so output is
    /// deterministic.
    pub fn write_word2vec(&self, writer: impl Write) -> Result<()> {
        let mut w = BufWriter::new(writer);
        write!(w, "{} {}\n", self.vectors.len(), self.dim)?;
        let mut terms: Vec<&String> = self.vectors.keys().collect();
        terms.sort();
        for term in terms {
            w.write_all(term.as_bytes())?;
            w.write_all(b" ")?;
            for &x in &self.vectors[term] {
                w.write_all(&x.to_le_bytes())?;
            }
            w.write_all(b"\n")?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Byte-counting reader so format errors can report an offset.
struct CountingReader<R> {
    inner: R,
    offset: u64,
}

impl<R: BufRead> CountingReader<R> {
    fn new(inner: R) -> Self {
        Self { inner, offset: 0 }
    }

    fn format_err(&self, reason: &str) -> Error {
        Error::EmbeddingFormat {
            offset: self.offset,
            reason: reason.to_string(),
        }
    }

    fn read_byte(&mut self) -> Result<Option<u8>> {
        let mut b = [0u8; 1];
        match self.inner.read(&mut b)? {
            0 => Ok(None),
            _ => {
                self.offset += 1;
                Ok(Some(b[0]))
            }
        }
    }

    /// Read up to and including the first `\n`; ASCII only.
    fn read_line_ascii(&mut self) -> Result<String> {
        let mut buf = Vec::new();
        loop {
            match self.read_byte()? {
                None => break,
                Some(b'\n') => break,
                Some(b) => buf.push(b),
            }
        }
        String::from_utf8(buf).map_err(|_| self.format_err("non-UTF-8 header"))
    }

    /// Skip leading whitespace, then read a word terminated by a space.
    /// Returns `None` at a clean end of stream.
    fn read_word(&mut self) -> Result<Option<String>> {
        let mut buf = Vec::new();
        loop {
            match self.read_byte()? {
                None => {
                    return if buf.is_empty() {
                        Ok(None)
                    } else {
                        Err(self.format_err("stream ended inside a word"))
                    }
                }
                Some(b' ') if buf.is_empty() => continue,
                Some(b'\n') | Some(b'\r') if buf.is_empty() => continue,
                Some(b' ') => break,
                Some(b) => buf.push(b),
            }
        }
        let word = String::from_utf8(buf).map_err(|_| self.format_err("non-UTF-8 word"))?;
        Ok(Some(word))
    }

    fn read_exact_or(&mut self, buf: &mut [u8], reason: impl Fn() -> String) -> Result<()> {
        match self.inner.read_exact(buf) {
            Ok(()) => {
                self.offset += buf.len() as u64;
                Ok(())
            }
            Err(_) => Err(self.format_err(&reason())),
        }
    }
}
