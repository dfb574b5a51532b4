# Read the input
n  = int(input())
vz2 = list(map(int, input().split()))

sum = 0
for i in range(n ):
   if vz2[i] % 4 == 2:
      sum  += vz2[i]
print(sum)
