size = int(input())
bbw = list(map(int, input().split()) )
bjy = int(input())
yj = 0
for i in range(size):
    for j in range(i+1, size):
        if bbw[i]+bbw[j]==bjy:
            yj  += 1
print( yj)
