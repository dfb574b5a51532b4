def sumMatching( kg2):
	total  = 0
	for i in range(len(kg2) ):
		if kg2[i] % 3  == 0 and kg2[i] > 0:
			total += kg2[i]

	return total


def solve():
	numCount = int(input( ))
	kg2  = list(map(int, input().split()))
	print(sumMatching(kg2))


def collatzSteps(num):
	wgj = 0
	while num != 1:
		if num % 2 == 0:
			num = num // 2
		else:
			num = 3 * num + 1
		wgj += 1
	return wgj


def solve2():
	size = int(input())

	print(collatzSteps(size))


def main():
	solve()
	solve2()


if __name__  == "__main__":
	main()
