use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// A scheduled event. Ordered by `(time, sequence)`; the sequence number is
/// assigned at scheduling time, so simultaneous events run in insertion
/// order.
#[derive(Debug, Clone)]
pub struct Event<K> {
    pub time: u64,
    pub sequence: u64,
    pub kind: K,
}

impl<K> PartialEq for Event<K> {
    fn eq(&self, other: &Self) -> bool {
        self.time == other.time && self.sequence == other.sequence
    }
}

impl<K> Eq for Event<K> {}

impl<K> PartialOrd for Event<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> Ord for Event<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap
        (other.time, other.sequence).cmp(&(self.time, self.sequence))
    }
}

/// Min-queue of events with deterministic tie-breaking.
#[derive(Debug)]
pub struct EventQueue<K> {
    heap: BinaryHeap<Event<K>>,
    next_sequence: u64,
}

impl<K> Default for EventQueue<K> {
    fn default() -> Self {
        EventQueue { heap: BinaryHeap::new(), next_sequence: 0 }
    }
}

impl<K> EventQueue<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn schedule(&mut self, time: u64, kind: K) -> u64 {
        let sequence = self.next_sequence;
        self.next_sequence += 1;
        self.heap.push(Event { time, sequence, kind });
        sequence
    }

    pub fn pop(&mut self) -> Option<Event<K>> {
        self.heap.pop()
    }

    pub fn peek_time(&self) -> Option<u64> {
        self.heap.peek().map(|e| e.time)
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_by_time_then_insertion() {
        let mut q = EventQueue::new();
        q.schedule(10, "c");
        q.schedule(5, "a");
        q.schedule(10, "d");
        q.schedule(5, "b");
        q.schedule(0, "first");
        let order: Vec<&str> = std::iter::from_fn(|| q.pop().map(|e| e.kind)).collect();
        assert_eq!(order, vec!["first", "a", "b", "c", "d"]);
    }

    #[test]
    fn sequences_are_monotone() {
        let mut q = EventQueue::new();
        let a = q.schedule(3, ());
        let b = q.schedule(1, ());
        assert!(b > a);
        assert_eq!(q.peek_time(), Some(1));
        assert_eq!(q.len(), 2);
    }
}
