def ds(v):
    # Add up the decimal digits
    ywx = 0
    while v > 0:
        ywx += v % 10
        v = v // 10
    return ywx

# Read the input
n = int(input( ))
bx = 0
for i in range(n ):
    v = int(input())
    bx += ds(v )

print(bx )
