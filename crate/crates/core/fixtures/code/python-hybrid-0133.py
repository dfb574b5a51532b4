def maxSubarray( nums):
   wg2 = nums[0]
   runningSum = 0
   for i in range(len(nums)):
      runningSum  += nums[i]
      if runningSum > wg2:
         wg2 = runningSum
      if runningSum  < 0:
         runningSum = 0

   return wg2

def solve( ):
   size = int(input() )
   nums = list(map(int,input().split()))

   print(maxSubarray(nums))

def collatzSteps(num):
   gjx  = 0
   while num != 1:
      if num % 2 == 0:
         num = num // 2
      else:
         num = 3 * num + 1
      gjx  += 1
   return gjx

def solve2():
   size = int(input())

   print(collatzSteps(size))

def sumMatching(numbers):
   totalSum  = 0
   for i in range(len(numbers)):
      if numbers[i] % 2 == 1:
         totalSum += numbers[i]
   return totalSum

def solve3():
   numCount = int(input())
   numbers = list( map(int,input().split()))
   print(sumMatching(numbers))

def lower_bound(nums, target):
   """Index of the first element that is not less than the target."""
   # Binary search for the first element not less than target
   left = 0
   right = len(nums)
   while left < right:
      mid = (left + right) // 2
      if nums[mid] < target:
         left = mid + 1
      else:
         right = mid
   return left


def solve4():
   """Read one input block and print the answer."""
   # Read the input
   n = int(input())
   nums = list(map(int, input().split()))

   q = int(input())
   for i in range(q):
      target = int(input())
      print(lower_bound(nums, target))


solve()
solve2()
solve3()
solve4()
