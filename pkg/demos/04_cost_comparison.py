"""Compare attention-weight budgets across five architectures as documents
grow, using the exact unit-constant cost formulas."""
from sentpool import CostQuery, costs

# A fixed sentence length of 20 tokens; documents grow from 5 to 400 sentences
# (100 to 8000 tokens). Window 4, two global tokens, 512-token recurrence.
print(f"{'sentences':>9} {'tokens':>7} {'full':>12} {'hierarchical':>13} "
      f"{'windowed':>10} {'recurrent':>11} {'pooled':>9}")
for t in (5, 10, 25, 50, 100, 200, 400):
    q = CostQuery(t=t, l=20, g=2, w=4, c=512)
    r = costs(q)
    print(f"{t:>9} {t * 20:>7} {r.roberta:>12,} {r.smith:>13,} "
          f"{r.longformer:>10,} {r.xlnet:>11,} {r.aose:>9,}")

print()
print("The pooled architecture pays one extra weight per sentence on top of")
print("per-sentence encoding, so its column grows linearly while full")
print("self-attention grows with the square of the document length.")

# The same sweep is available as CSV from the command line:
#   sentpool cost --sweep 't=5:400:5,l=20,g=2,w=4,c=512' --out sweep.csv
