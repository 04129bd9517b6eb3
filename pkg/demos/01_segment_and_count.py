"""Walk through sentence segmentation: HTML cleanup, token counting, and the
min/max/cap rules that shape the sentences."""
from sentpool import RawDocument, SegmentConfig, count_tokens, segment, strip_html

raw = (
    "<html><body><p>This movie was a complete surprise to me &amp; my friends.</p>"
    "<p>Short.</p><p>The plot twists kept everyone on the edge of their seats "
    "until the very last scene, and the acting was superb throughout!</p></body></html>"
)

print("cleaned text:")
cleaned = strip_html(raw)
print(" ", cleaned)
print("token count:", count_tokens(cleaned))
print()

# Default rules: sentences carry 5..250 tokens, documents cap at 8192.
doc = RawDocument(doc_id="demo", text=raw, label=0)
for sent in segment(doc):
    print(f"  [{sent.index}] ({sent.token_count:>3} tokens) {sent.text}")
print()

# "Short." alone has 2 tokens, under the minimum of 5, so it was merged into
# the sentence that follows it. Watch the same text under a looser minimum:
for sent in segment(doc, SegmentConfig(min_tokens=1, max_tokens=250)):
    print(f"  [{sent.index}] ({sent.token_count:>3} tokens) {sent.text}")
print()

# Over-long runs are hard-split at token boundaries. 600 tokens with a
# maximum of 250 become 250 + 250 + 100:
monster = RawDocument(doc_id="long", text=" ".join(f"word{i}" for i in range(600)), label=0)
chunks = segment(monster)
print("600 unbroken tokens split into:", [s.token_count for s in chunks])
